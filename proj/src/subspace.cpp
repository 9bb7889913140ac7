#include "wigner/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wigner {

namespace {

// Rank cutoff on singular values when deciding how many independent
// directions a stacked family of unit-norm columns carries.
constexpr double kSpanTol = 1e-7;

void require_same_ambient(const Frame& x, const Frame& y, const char* who) {
    if (x.ambient_dim() != y.ambient_dim()) {
        throw DimensionMismatch(std::string(who) + ": ambient dimensions differ");
    }
}

}  // namespace

Frame::Frame(Eigen::MatrixXcd columns, double tol) : cols_(std::move(columns)) {
    if (cols_.rows() < cols_.cols()) {
        throw DimensionMismatch("Frame: more columns than ambient dimension");
    }
    if (cols_.cols() > 0) {
        const Eigen::MatrixXcd gram = cols_.adjoint() * cols_;
        const double residual =
            (gram - Eigen::MatrixXcd::Identity(cols_.cols(), cols_.cols())).norm();
        if (residual > tol) {
            std::ostringstream msg;
            msg << "Frame: columns not orthonormal (residual " << residual << ")";
            throw RankDeficient(msg.str());
        }
    }
}

Frame Frame::empty(int ambient_dim) {
    return Frame(Eigen::MatrixXcd(ambient_dim, 0));
}

Frame Frame::standard(int ambient_dim) {
    return Frame(Eigen::MatrixXcd::Identity(ambient_dim, ambient_dim));
}

Frame orthonormalize(const Eigen::MatrixXcd& vectors, double tol) {
    if (tol <= 0.0) throw Error("orthonormalize: tol must be positive");
    const int k = static_cast<int>(vectors.cols());
    if (k == 0) return Frame(vectors);
    const Eigen::MatrixXcd gram = vectors.adjoint() * vectors;
    if ((gram - Eigen::MatrixXcd::Identity(k, k)).norm() <= 1e-12) {
        return Frame(vectors);  // already orthonormal; keep exact columns
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vectors, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > tol) ++rank;
    }
    if (rank < k) {
        std::ostringstream msg;
        msg << "orthonormalize: numerical rank " << rank << " below column count " << k;
        throw RankDeficient(msg.str());
    }
    return Frame(svd.matrixU().leftCols(rank));
}

HermitianOperator projection_of(const Frame& x) {
    const Eigen::MatrixXcd p = x.columns() * x.columns().adjoint();
    return HermitianOperator(0.5 * (p + p.adjoint()));
}

Frame image_of_projection(const HermitianOperator& p, double tol) {
    const ProjectionCheck check = is_projection(p, tol);
    if (!check.is_projection) {
        throw NotAProjection("image_of_projection: input is not a projection at tol");
    }
    const Spectrum s = spectral_decompose(p);
    return Frame(s.eigenvectors.leftCols(check.rank));
}

namespace {

// Principal angles plus the corresponding principal directions inside x.
// Small angles are recomputed from the sine (residual against P_X) because
// arccos loses all precision near zero.
struct AngleData {
    std::vector<double> angles;       // aligned with singular value order
    Eigen::MatrixXcd directions_in_x; // columns aligned with `angles`
};

AngleData principal_angle_data(const Frame& x, const Frame& y) {
    AngleData out;
    const int q = std::min(x.rank(), y.rank());
    if (q == 0) {
        out.directions_in_x = Eigen::MatrixXcd(x.ambient_dim(), 0);
        return out;
    }
    const Eigen::MatrixXcd m = x.columns().adjoint() * y.columns();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.angles.resize(static_cast<std::size_t>(q));
    out.directions_in_x.resize(x.ambient_dim(), q);
    for (int i = 0; i < q; ++i) {
        const double cosv = std::clamp(svd.singularValues()(i), 0.0, 1.0);
        const Eigen::VectorXcd u = x.columns() * svd.matrixU().col(i);
        out.directions_in_x.col(i) = u;
        if (cosv >= 0.5) {
            const Eigen::VectorXcd yv = y.columns() * svd.matrixV().col(i);
            const Eigen::VectorXcd residual =
                yv - x.columns() * (x.columns().adjoint() * yv);
            out.angles[static_cast<std::size_t>(i)] =
                std::asin(std::min(residual.norm(), 1.0));
        } else {
            out.angles[static_cast<std::size_t>(i)] = std::acos(cosv);
        }
    }
    return out;
}

}  // namespace

Frame meet(const Frame& x, const Frame& y, double angle_tol) {
    require_same_ambient(x, y, "meet");
    if (x.rank() == 0 || y.rank() == 0) return Frame::empty(x.ambient_dim());
    const AngleData data = principal_angle_data(x, y);
    int zeros = 0;
    for (std::size_t i = 0; i < data.angles.size(); ++i) {
        if (data.angles[i] <= angle_tol) ++zeros;
    }
    // zero angles come first in singular value order
    Eigen::MatrixXcd cols(x.ambient_dim(), zeros);
    int out = 0;
    for (int i = 0; i < static_cast<int>(data.angles.size()); ++i) {
        if (data.angles[static_cast<std::size_t>(i)] <= angle_tol) {
            cols.col(out++) = data.directions_in_x.col(i);
        }
    }
    return Frame(std::move(cols));
}

Frame join(const Frame& x, const Frame& y) {
    require_same_ambient(x, y, "join");
    const int total = x.rank() + y.rank();
    if (total == 0) return Frame::empty(x.ambient_dim());
    Eigen::MatrixXcd stacked(x.ambient_dim(), total);
    stacked.leftCols(x.rank()) = x.columns();
    stacked.rightCols(y.rank()) = y.columns();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > kSpanTol) ++rank;
    }
    return Frame(svd.matrixU().leftCols(rank));
}

Frame ortho_complement(const Frame& x) {
    const int n = x.ambient_dim();
    const int k = x.rank();
    if (k == 0) return Frame::standard(n);
    if (k == n) return Frame::empty(n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x.columns());
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    return Frame(q.rightCols(n - k));
}

PrincipalAngleProfile principal_angles(const Frame& x, const Frame& y) {
    require_same_ambient(x, y, "principal_angles");
    PrincipalAngleProfile profile;
    profile.angles = principal_angle_data(x, y).angles;
    std::sort(profile.angles.begin(), profile.angles.end());
    return profile;
}

bool is_compatible(const Frame& x, const Frame& y, double tol) {
    require_same_ambient(x, y, "is_compatible");
    const Eigen::MatrixXcd px = projection_of(x).mat();
    const Eigen::MatrixXcd py = projection_of(y).mat();
    return (px * py - py * px).norm() <= tol;
}

double gap_distance(const Frame& x, const Frame& y) {
    require_same_ambient(x, y, "gap_distance");
    if (x.rank() != y.rank()) {
        throw RankMismatch("gap_distance: frames have different ranks");
    }
    return (projection_of(x).mat() - projection_of(y).mat()).norm();
}

bool contains(const Frame& outer, const Frame& inner, double tol) {
    require_same_ambient(outer, inner, "contains");
    if (inner.rank() == 0) return true;
    const Eigen::MatrixXcd residual =
        inner.columns() - outer.columns() * (outer.columns().adjoint() * inner.columns());
    return residual.colwise().norm().maxCoeff() <= tol;
}

Frame random_frame(Rng& rng, int n, int k) {
    if (k < 0 || k > n) throw BadRank("random_frame: need 0 <= k <= n");
    if (k == 0) return Frame::empty(n);
    return orthonormalize(rng.gaussian_matrix(n, k), 1e-6);
}

Frame complement_within(const Frame& inner, const Frame& outer) {
    require_same_ambient(inner, outer, "complement_within");
    if (outer.rank() == 0) return Frame::empty(outer.ambient_dim());
    if (inner.rank() == 0) return outer;
    const Eigen::MatrixXcd pin = projection_of(inner).mat();
    const Eigen::MatrixXcd shifted =
        outer.columns() - pin * outer.columns();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > kSpanTol) ++rank;
    }
    return Frame(svd.matrixU().leftCols(rank));
}

}  // namespace wigner
