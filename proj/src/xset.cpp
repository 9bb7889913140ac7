#include "wigner/xset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wigner/grassmann.hpp"
#include "wigner/rng.hpp"

namespace wigner {

namespace {

constexpr double kSolveTarget = 1e-11;   // Gauss-Newton residual target
constexpr double kJacobianCut = 1e-6;    // singular value cutoff of the constraint Jacobian
constexpr double kPcaStep = 1e-3;        // local sampling radius
constexpr int kRestarts = 50;

void require_equal_ranks(const Frame& x, const Frame& y, const char* who) {
    if (x.ambient_dim() != y.ambient_dim()) {
        throw DimensionMismatch(std::string(who) + ": ambient dimensions differ");
    }
    if (x.rank() != y.rank()) {
        throw RankMismatch(std::string(who) + ": ranks differ");
    }
}

// Members live in the interval [C, X+Y]_k: Z = C ⊕ (V · F) with F an
// orthonormal j-frame in the coordinates of V = (X+Y) ⊖ C and j = k - c.
// dim V = 2j for any pair of equal-rank subspaces.
struct IntervalGeometry {
    Frame common;            // C = X ∩ Y
    Frame v;                 // (X + Y) ⊖ C
    Eigen::MatrixXcd s;      // P_X + P_Y
    HermitianBasis basis;    // ambient coordinates
    int k = 0;
    int j = 0;

    explicit IntervalGeometry(const Frame& x, const Frame& y)
        : common(meet(x, y)),
          v(complement_within(common, join(x, y))),
          s(projection_of(x).mat() + projection_of(y).mat()),
          basis(x.ambient_dim()),
          k(x.rank()),
          j(x.rank() - common.rank()) {}

    Frame member_frame(const Eigen::MatrixXcd& f) const {
        Eigen::MatrixXcd columns(common.ambient_dim(), k);
        if (common.rank() > 0) columns.leftCols(common.rank()) = common.columns();
        if (j > 0) columns.rightCols(j) = v.columns() * f;
        return Frame(std::move(columns));
    }

    Eigen::MatrixXcd member_projection(const Eigen::MatrixXcd& f) const {
        const Frame z = member_frame(f);
        return z.columns() * z.columns().adjoint();
    }

    // Idempotency residual of Q = S - P_Z as ambient coordinates.
    Eigen::VectorXd residual(const Eigen::MatrixXcd& f) const {
        const Eigen::MatrixXcd q = s - member_projection(f);
        const Eigen::MatrixXcd r = q * q - q;
        return real_coords(HermitianOperator(0.5 * (r + r.adjoint())), basis);
    }

    // Jacobian of the residual along the containment-constrained tangent
    // directions at F. Directions move one F column toward one column of the
    // complement of F inside V; dG(T) = T - T Q - Q T for a tangent matrix T.
    Eigen::MatrixXd jacobian(const Eigen::MatrixXcd& f) const {
        const Eigen::MatrixXcd q = s - member_projection(f);
        const Eigen::MatrixXcd normal = complement_of(f);
        const int nt = static_cast<int>(normal.cols());
        Eigen::MatrixXd jac(basis.size(), 2 * nt * j);
        int col = 0;
        for (int a = 0; a < nt; ++a) {
            const Eigen::VectorXcd vdir = v.columns() * normal.col(a);
            for (int b = 0; b < j; ++b) {
                const Eigen::VectorXcd fdir = v.columns() * f.col(b);
                for (int part = 0; part < 2; ++part) {
                    const Eigen::VectorXcd w =
                        part == 0 ? vdir : (std::complex<double>(0, 1) * vdir).eval();
                    const Eigen::MatrixXcd t =
                        w * fdir.adjoint() + fdir * w.adjoint();
                    const Eigen::MatrixXcd dg = t - t * q - q * t;
                    jac.col(col++) =
                        real_coords(HermitianOperator(0.5 * (dg + dg.adjoint())), basis);
                }
            }
        }
        return jac;
    }

    Eigen::MatrixXcd complement_of(const Eigen::MatrixXcd& f) const {
        const int dim_v = static_cast<int>(v.rank());
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(f);
        const Eigen::MatrixXcd full =
            qr.householderQ() * Eigen::MatrixXcd::Identity(dim_v, dim_v);
        return full.rightCols(dim_v - j);
    }
};

Eigen::MatrixXcd orth_columns(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    return svd.matrixU();
}

struct SolveResult {
    Eigen::MatrixXcd f;
    double residual = 0.0;
    bool converged = false;
};

// Damped Gauss-Newton on the idempotency residual over G_j(V), retracting
// each step back onto the Stiefel representative by orthonormalization.
SolveResult solve_member(const IntervalGeometry& geom, const Eigen::MatrixXcd& f0) {
    SolveResult out;
    out.f = orth_columns(f0);
    Eigen::VectorXd r = geom.residual(out.f);
    out.residual = r.norm();
    for (int iter = 0; iter < 80 && out.residual > kSolveTarget; ++iter) {
        const Eigen::MatrixXd jac = geom.jacobian(out.f);
        const Eigen::MatrixXcd normal = geom.complement_of(out.f);
        Eigen::VectorXd delta =
            jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                .setThreshold(1e-10)
                .solve(-r);
        // assemble the complex step matrix B with F <- orth(F + N B)
        const int nt = static_cast<int>(normal.cols());
        Eigen::MatrixXcd b(nt, geom.j);
        int idx = 0;
        for (int a = 0; a < nt; ++a) {
            for (int col = 0; col < geom.j; ++col) {
                const double re = delta(idx++);
                const double im = delta(idx++);
                b(a, col) = std::complex<double>(re, im);
            }
        }
        double step = 1.0;
        bool improved = false;
        for (int half = 0; half < 12; ++half) {
            const Eigen::MatrixXcd trial = orth_columns(out.f + normal * (step * b));
            const Eigen::VectorXd rt = geom.residual(trial);
            if (rt.norm() < out.residual) {
                out.f = trial;
                r = rt;
                out.residual = rt.norm();
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    out.converged = out.residual <= kSolveTarget;
    return out;
}

int jacobian_dimension(const IntervalGeometry& geom, const Eigen::MatrixXcd& f) {
    const Eigen::MatrixXd jac = geom.jacobian(f);
    const Eigen::VectorXd sv = jac.bdcSvd().singularValues();
    const int total = 2 * geom.j * geom.j;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > kJacobianCut) ++rank;
    }
    return total - rank;
}

int pca_dimension(const IntervalGeometry& geom, const Eigen::MatrixXcd& f_at,
                  std::uint64_t seed) {
    const int tangent_dim = 2 * geom.j * geom.j;
    const int wanted = std::max(48, 6 * tangent_dim);
    const Eigen::VectorXd center =
        real_coords(HermitianOperator(geom.member_projection(f_at)), geom.basis);

    Rng rng(seed);
    std::vector<Eigen::VectorXd> cloud;
    cloud.reserve(static_cast<std::size_t>(wanted));
    const int dim_v = geom.v.rank();
    for (int s = 0; s < wanted; ++s) {
        Rng local = rng.fork(static_cast<std::uint64_t>(s));
        const Eigen::MatrixXcd start = f_at + kPcaStep * local.gaussian_matrix(dim_v, geom.j);
        const SolveResult sol = solve_member(geom, start);
        if (!sol.converged) continue;
        Eigen::VectorXd diff =
            real_coords(HermitianOperator(geom.member_projection(sol.f)), geom.basis) - center;
        if (diff.norm() > 50.0 * kPcaStep) continue;  // solver wandered too far
        cloud.push_back(std::move(diff));
    }
    if (cloud.size() < 8) {
        throw Error("xset_local_dimension: too few converged local samples for PCA");
    }
    Eigen::MatrixXd rows(static_cast<int>(cloud.size()), geom.basis.size());
    for (int i = 0; i < rows.rows(); ++i) rows.row(i) = cloud[static_cast<std::size_t>(i)];
    const Eigen::RowVectorXd mean = rows.colwise().mean();
    rows.rowwise() -= mean;
    const Eigen::VectorXd sv = rows.bdcSvd().singularValues();
    const double cut = kPcaStep / 5.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows.rows()));
    int dim = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) * scale > cut) ++dim;
    }
    return dim;
}

// Coordinates of `at` inside the interval chart, checking that it actually
// contains C and lies inside X + Y.
Eigen::MatrixXcd chart_coordinates(const IntervalGeometry& geom, const Frame& at) {
    if (!contains(at, geom.common, 1e-6)) {
        throw NotAMember("xset member does not contain X ∩ Y");
    }
    const Frame reduced = complement_within(geom.common, at);
    if (reduced.rank() != geom.j) {
        throw NotAMember("xset member has unexpected rank inside the interval");
    }
    if (geom.j == 0) return Eigen::MatrixXcd(geom.v.rank(), 0);
    const Eigen::MatrixXcd coords = geom.v.columns().adjoint() * reduced.columns();
    const double loss = (geom.v.columns() * coords - reduced.columns()).norm();
    if (loss > 1e-6) {
        throw NotAMember("xset member is not inside X + Y");
    }
    return orth_columns(coords);
}

Frame random_interval_member(const IntervalGeometry& geom, Rng& rng) {
    if (geom.j == 0) return geom.member_frame(Eigen::MatrixXcd(geom.v.rank(), 0));
    return geom.member_frame(orth_columns(rng.gaussian_matrix(geom.v.rank(), geom.j)));
}

}  // namespace

bool xset_contains(const Frame& x, const Frame& y, const Frame& z, double tol) {
    require_equal_ranks(x, y, "xset_contains");
    require_equal_ranks(x, z, "xset_contains");
    const Eigen::MatrixXcd candidate =
        projection_of(x).mat() + projection_of(y).mat() - projection_of(z).mat();
    const ProjectionCheck check =
        is_projection(HermitianOperator(0.5 * (candidate + candidate.adjoint())), tol);
    return check.is_projection && check.rank == x.rank();
}

XSetSample xset_sample(const Frame& x, const Frame& y, int count,
                       std::uint64_t seed, double tol) {
    require_equal_ranks(x, y, "xset_sample");
    XSetSample sample{x, y, {}, seed};
    if (count <= 0) return sample;

    const IntervalGeometry geom(x, y);
    if (geom.j == 0) {
        // X = Y: the unique member is X itself.
        sample.points.push_back(x);
        return sample;
    }

    Rng rng(seed);
    for (int p = 0; p < count; ++p) {
        Rng point_rng = rng.fork(static_cast<std::uint64_t>(p));
        for (int restart = 0; restart < kRestarts; ++restart) {
            const Eigen::MatrixXcd start = point_rng.gaussian_matrix(geom.v.rank(), geom.j);
            const SolveResult sol = solve_member(geom, start);
            if (!sol.converged) continue;
            const Frame z = geom.member_frame(sol.f);
            if (!xset_contains(x, y, z, tol)) continue;
            bool fresh = true;
            for (const Frame& seen : sample.points) {
                if (gap_distance(seen, z) <= 1e-6) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) {
                sample.points.push_back(z);
                break;
            }
        }
    }
    for (const Frame& z : sample.points) {
        if (!xset_contains(x, y, z, 1e-8)) {
            throw Error("xset_sample: stored point fails membership");
        }
    }
    return sample;
}

int xset_local_dimension(const Frame& x, const Frame& y, const Frame& at, double tol) {
    require_equal_ranks(x, y, "xset_local_dimension");
    require_equal_ranks(x, at, "xset_local_dimension");
    if (!xset_contains(x, y, at, std::max(tol, 1e-8))) {
        throw NotAMember("xset_local_dimension: `at` is not a member");
    }
    const IntervalGeometry geom(x, y);
    if (geom.j == 0) return 0;

    const Eigen::MatrixXcd f_at = chart_coordinates(geom, at);
    const int from_jacobian = jacobian_dimension(geom, f_at);
    const int from_pca = pca_dimension(geom, f_at, 0xD1CEu);
    if (from_jacobian != from_pca) {
        std::ostringstream msg;
        msg << "xset_local_dimension: estimators disagree (jacobian " << from_jacobian
            << ", pca " << from_pca << ")";
        throw Error(msg.str());
    }
    return from_jacobian;
}

XSetClass geher_classify(const Frame& x, const Frame& y, double tol) {
    require_equal_ranks(x, y, "geher_classify");
    const double tol_eff = std::max(tol, 1e-8);
    if (is_compatible(x, y, tol_eff)) {
        const IntervalGeometry geom(x, y);
        Rng rng(0xC1A551Fu);
        for (int i = 0; i < 50; ++i) {
            const Frame z = random_interval_member(geom, rng);
            if (!xset_contains(x, y, z, tol_eff)) {
                throw Error("geher_classify: compatible pair failed interval cross-validation");
            }
        }
        return XSetClass::CompatibleFullInterval;
    }
    if (distance(x, y) == 1) {
        const int dim = xset_local_dimension(x, y, x, tol);
        if (dim != 1) {
            std::ostringstream msg;
            msg << "geher_classify: non-compatible adjacent pair has local dimension "
                << dim << " instead of 1";
            throw Error(msg.str());
        }
        return XSetClass::NonCompatibleAdjacentCurve;
    }
    return XSetClass::Other;
}

const char* xset_class_name(XSetClass c) {
    switch (c) {
        case XSetClass::CompatibleFullInterval: return "CompatibleFullInterval";
        case XSetClass::NonCompatibleAdjacentCurve: return "NonCompatibleAdjacentCurve";
        case XSetClass::Other: return "Other";
    }
    return "?";
}

}  // namespace wigner
