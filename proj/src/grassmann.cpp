#include "wigner/grassmann.hpp"

#include <sstream>

#include "wigner/rng.hpp"

namespace wigner {

namespace {

void require_equal_ranks(const Frame& x, const Frame& y, const char* who) {
    if (x.ambient_dim() != y.ambient_dim()) {
        throw DimensionMismatch(std::string(who) + ": ambient dimensions differ");
    }
    if (x.rank() != y.rank()) {
        throw RankMismatch(std::string(who) + ": ranks differ");
    }
}

// Vertex stacks mix columns from orthogonal blocks; re-orthonormalize to keep
// the Frame invariant exact. Throws RankDeficient on a degenerate stack.
Frame vertex_from_columns(const Eigen::MatrixXcd& columns) {
    return orthonormalize(columns, 1e-6);
}

}  // namespace

Star::Star(Frame b) : base(std::move(b)) {
    if (base.rank() < 1) throw BadRank("Star: base must have rank k-1 >= 1");
}

Top::Top(Frame r) : roof(std::move(r)) {
    if (roof.rank() < 2) throw BadRank("Top: roof must have rank k+1 >= 2");
    if (roof.rank() > roof.ambient_dim()) throw BadRank("Top: roof rank exceeds ambient");
}

GeodesicPath::GeodesicPath(std::vector<Frame> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error("GeodesicPath: at least one vertex required");
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        if (!is_adjacent(vertices_[i], vertices_[i + 1])) {
            throw Error("GeodesicPath: consecutive vertices are not adjacent");
        }
    }
    const int d = distance(vertices_.front(), vertices_.back());
    if (d != static_cast<int>(vertices_.size()) - 1) {
        std::ostringstream msg;
        msg << "GeodesicPath: edge count " << vertices_.size() - 1
            << " differs from endpoint distance " << d;
        throw Error(msg.str());
    }
}

int distance(const Frame& x, const Frame& y) {
    require_equal_ranks(x, y, "distance");
    return x.rank() - meet(x, y).rank();
}

bool is_adjacent(const Frame& x, const Frame& y) { return distance(x, y) == 1; }

bool is_ortho_adjacent(const Frame& x, const Frame& y, double compat_tol) {
    return is_adjacent(x, y) && is_compatible(x, y, compat_tol);
}

GeodesicPath build_geodesic(const Frame& x, const Frame& y) {
    require_equal_ranks(x, y, "build_geodesic");
    const int k = x.rank();
    const Frame common = meet(x, y);
    const int c = common.rank();
    if (c == k) return GeodesicPath({x});

    const Frame x_rest = complement_within(common, x);  // rank k - c
    Frame y_rest = complement_within(common, y);

    const int steps = k - c;
    // Exchange y-basis vectors in ascending index. If an intermediate span
    // degenerates, remix the y-basis with a seeded unitary and retry.
    Rng remix_rng(0x9e0de51c);
    for (int attempt = 0; attempt < 24; ++attempt) {
        std::vector<Frame> vertices;
        vertices.push_back(x);
        bool ok = true;
        for (int i = 1; i < steps; ++i) {
            Eigen::MatrixXcd columns(x.ambient_dim(), k);
            int col = 0;
            for (int a = 0; a < c; ++a) columns.col(col++) = common.columns().col(a);
            for (int a = 0; a < i; ++a) columns.col(col++) = y_rest.columns().col(a);
            for (int a = i; a < steps; ++a) columns.col(col++) = x_rest.columns().col(a);
            try {
                vertices.push_back(vertex_from_columns(columns));
            } catch (const RankDeficient&) {
                ok = false;
                break;
            }
        }
        if (ok) {
            vertices.push_back(y);
            return GeodesicPath(std::move(vertices));
        }
        y_rest = Frame(y_rest.columns() * remix_rng.unitary(steps));
    }
    throw Error("build_geodesic: could not find a nondegenerate exchange order");
}

GeodesicPath geodesic_through_to_orthogonal(const Frame& x, const Frame& y) {
    require_equal_ranks(x, y, "geodesic_through_to_orthogonal");
    const int k = x.rank();
    const int n = x.ambient_dim();
    if (n < 2 * k) {
        throw InsufficientAmbientDim("geodesic_through_to_orthogonal: need dim >= 2k");
    }
    if (!is_compatible(x, y)) {
        throw NotCompatible("geodesic_through_to_orthogonal: X and Y are not compatible");
    }

    const Frame common = meet(x, y);
    const int c = common.rank();
    const Frame x_rest = complement_within(common, x);  // X', orthogonal to Y'
    const Frame y_rest = complement_within(common, y);
    const Frame outside = ortho_complement(join(x, y));
    const Frame d_block = outside.rank() > c
                              ? Frame(outside.columns().leftCols(c))
                              : outside;  // rank c since n >= 2k

    std::vector<Frame> vertices;
    vertices.push_back(x);
    // Leg 1: swap X' columns for Y' columns, keeping the common part.
    for (int i = 1; i <= k - c; ++i) {
        Eigen::MatrixXcd columns(n, k);
        int col = 0;
        for (int a = 0; a < c; ++a) columns.col(col++) = common.columns().col(a);
        for (int a = 0; a < i; ++a) columns.col(col++) = y_rest.columns().col(a);
        for (int a = i; a < k - c; ++a) columns.col(col++) = x_rest.columns().col(a);
        vertices.push_back(vertex_from_columns(columns));
    }
    // Leg 2: swap the common part for fresh directions orthogonal to X + Y.
    for (int i = 1; i <= c; ++i) {
        Eigen::MatrixXcd columns(n, k);
        int col = 0;
        for (int a = 0; a < i; ++a) columns.col(col++) = d_block.columns().col(a);
        for (int a = i; a < c; ++a) columns.col(col++) = common.columns().col(a);
        for (int a = 0; a < k - c; ++a) columns.col(col++) = y_rest.columns().col(a);
        vertices.push_back(vertex_from_columns(columns));
    }
    return GeodesicPath(std::move(vertices));
}

std::vector<Frame> max_compatible_in_top(const Top& top) {
    const int kp1 = top.roof.rank();
    std::vector<Frame> family;
    family.reserve(static_cast<std::size_t>(kp1));
    for (int drop = 0; drop < kp1; ++drop) {
        Eigen::MatrixXcd columns(top.roof.ambient_dim(), kp1 - 1);
        int col = 0;
        for (int a = 0; a < kp1; ++a) {
            if (a != drop) columns.col(col++) = top.roof.columns().col(a);
        }
        family.emplace_back(std::move(columns));
    }
    return family;
}

std::vector<Frame> max_compatible_in_star(const Star& star, const Frame& ambient) {
    if (star.base.ambient_dim() != ambient.ambient_dim()) {
        throw DimensionMismatch("max_compatible_in_star: ambient dims differ");
    }
    if (!contains(ambient, star.base, 1e-8)) {
        throw Error("max_compatible_in_star: base is not inside the ambient frame");
    }
    const Frame extensions = complement_within(star.base, ambient);
    std::vector<Frame> family;
    family.reserve(static_cast<std::size_t>(extensions.rank()));
    for (int i = 0; i < extensions.rank(); ++i) {
        Eigen::MatrixXcd columns(ambient.ambient_dim(), star.base.rank() + 1);
        columns.leftCols(star.base.rank()) = star.base.columns();
        columns.col(star.base.rank()) = extensions.columns().col(i);
        family.emplace_back(vertex_from_columns(columns));
    }
    return family;
}

}  // namespace wigner
