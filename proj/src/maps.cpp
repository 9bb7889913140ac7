#include "wigner/maps.hpp"

#include <cmath>
#include <sstream>

#include "wigner/parallel.hpp"
#include "wigner/rng.hpp"

namespace wigner {

namespace {

HermitianOperator hermitized(const Eigen::MatrixXcd& m) {
    return HermitianOperator(0.5 * (m + m.adjoint()));
}

// Columns of the coordinate matrix of A |-> action(B_a) over the canonical
// basis of the source space.
template <typename Action>
OperatorMap build_map(int n, int n_prime, Action&& action) {
    const HermitianBasis source(n);
    const HermitianBasis target(n_prime);
    OperatorMap map;
    map.n = n;
    map.n_prime = n_prime;
    map.matrix.resize(target.size(), source.size());
    for (int a = 0; a < source.size(); ++a) {
        const Eigen::MatrixXcd image = action(source.element(a));
        map.matrix.col(a) = real_coords(hermitized(image), target);
    }
    return map;
}

Eigen::MatrixXcd sigma_twisted(const Eigen::MatrixXcd& a, Sigma sigma) {
    return sigma == Sigma::Conjugation ? a.conjugate() : a;
}

}  // namespace

SemilinearMap::SemilinearMap(Eigen::MatrixXcd m, Sigma s, double tol)
    : matrix(std::move(m)), sigma(s) {
    const int cols = static_cast<int>(matrix.cols());
    const double residual =
        (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(cols, cols)).norm();
    if (residual > tol) {
        std::ostringstream msg;
        msg << "SemilinearMap: columns not orthonormal (residual " << residual << ")";
        throw NotAnIsometry(msg.str());
    }
}

Eigen::VectorXcd SemilinearMap::apply(const Eigen::VectorXcd& x) const {
    return sigma == Sigma::Conjugation ? (matrix * x.conjugate()).eval()
                                       : (matrix * x).eval();
}

Frame SemilinearMap::map_subspace(const Frame& x) const {
    if (x.ambient_dim() != source_dim()) {
        throw DimensionMismatch("SemilinearMap::map_subspace: ambient dim mismatch");
    }
    return Frame(matrix * sigma_twisted(x.columns(), sigma));
}

OperatorMap make_L_U(const SemilinearMap& u) {
    return build_map(u.source_dim(), u.target_dim(), [&](const Eigen::MatrixXcd& b) {
        return (u.matrix * sigma_twisted(b, u.sigma) * u.matrix.adjoint()).eval();
    });
}

OperatorMap make_L_perp(int k, int n) {
    if (k <= 0 || k >= n) throw BadRank("make_L_perp: need 0 < k < n");
    const double inv_k = 1.0 / static_cast<double>(k);
    OperatorMap map = build_map(n, n, [&](const Eigen::MatrixXcd& b) {
        return (inv_k * b.trace() * Eigen::MatrixXcd::Identity(n, n) - b).eval();
    });
    map.k = k;
    map.m = n - k;
    return map;
}

OperatorMap make_L_UW(const SemilinearMap& u, const Frame& w, int k) {
    const int n = u.source_dim();
    const int n_prime = u.target_dim();
    if (w.ambient_dim() != n_prime) {
        throw DimensionMismatch("make_L_UW: W lives in a different target space");
    }
    if (k <= 0 || k >= n) throw BadRank("make_L_UW: need 0 < k < n");
    if (w.rank() > 0) {
        const double overlap = (w.columns().adjoint() * u.matrix).norm();
        if (overlap > 1e-8) {
            throw NotOrthogonal("make_L_UW: range of U is not orthogonal to W");
        }
    }
    const Eigen::MatrixXcd pw = w.columns() * w.columns().adjoint();
    const double inv_k = 1.0 / static_cast<double>(k);
    OperatorMap map = build_map(n, n_prime, [&](const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd image = u.matrix * sigma_twisted(b, u.sigma) * u.matrix.adjoint();
        if (w.rank() > 0) image += inv_k * b.trace() * pw;
        return image;
    });
    map.k = k;
    map.m = k + w.rank();
    return map;
}

OperatorMap make_trace_collapse(const HermitianOperator& p, int k) {
    const ProjectionCheck check = is_projection(p, 1e-8);
    if (!check.is_projection || check.rank != k) {
        throw NotAProjection("make_trace_collapse: P is not a rank-k projection");
    }
    const double inv_k = 1.0 / static_cast<double>(k);
    OperatorMap map = build_map(p.dim(), p.dim(), [&](const Eigen::MatrixXcd& b) {
        return (inv_k * b.trace() * p.mat()).eval();
    });
    map.k = k;
    map.m = k;
    return map;
}

OperatorMap compose(const OperatorMap& outer, const OperatorMap& inner) {
    if (inner.n_prime != outer.n) {
        throw DimensionMismatch("compose: inner target dim differs from outer source dim");
    }
    OperatorMap map;
    map.n = inner.n;
    map.n_prime = outer.n_prime;
    map.k = inner.k;
    map.m = outer.m;
    map.matrix = outer.matrix * inner.matrix;
    return map;
}

OperatorMap scale(const OperatorMap& map, double factor) {
    OperatorMap out = map;
    out.matrix *= factor;
    return out;
}

OperatorMap add(const OperatorMap& a, const OperatorMap& b) {
    if (a.n != b.n || a.n_prime != b.n_prime) {
        throw DimensionMismatch("add: operator map dimensions differ");
    }
    OperatorMap out = a;
    out.matrix += b.matrix;
    out.k = std::nullopt;
    out.m = std::nullopt;
    return out;
}

HermitianOperator apply(const OperatorMap& map, const HermitianOperator& a) {
    if (a.dim() != map.n) {
        throw DimensionMismatch("apply: operator dim differs from map source dim");
    }
    const HermitianBasis source(map.n);
    const HermitianBasis target(map.n_prime);
    return from_coords(map.matrix * real_coords(a, source), target);
}

HermitianOperator random_rank_k_projection(int n, int k, std::uint64_t seed) {
    if (k <= 0 || k > n) throw BadRank("random_rank_k_projection: need 0 < k <= n");
    Rng rng(seed);
    return projection_of(random_frame(rng, n, k));
}

namespace {

constexpr int kMaxStoredWitnesses = 8;

void push_witness(ConditionReport& report, ConditionWitness witness) {
    if (static_cast<int>(report.witnesses.size()) < kMaxStoredWitnesses) {
        report.witnesses.push_back(std::move(witness));
    }
}

std::vector<HermitianOperator> sample_projections(const OperatorMap& map, int k,
                                                  int samples, std::uint64_t seed) {
    std::vector<HermitianOperator> out(static_cast<std::size_t>(samples),
                                       HermitianOperator::zero(map.n));
    Rng base(seed);
    parallel_for(samples, [&](int i) {
        out[static_cast<std::size_t>(i)] =
            random_rank_k_projection(map.n, k, base.fork(static_cast<std::uint64_t>(i)).next_u64());
    });
    return out;
}

std::vector<HermitianOperator> map_images(const OperatorMap& map,
                                          const std::vector<HermitianOperator>& inputs) {
    std::vector<HermitianOperator> out(inputs.size(), HermitianOperator::zero(map.n_prime));
    parallel_for(static_cast<int>(inputs.size()),
                 [&](int i) { out[static_cast<std::size_t>(i)] = apply(map, inputs[static_cast<std::size_t>(i)]); });
    return out;
}

}  // namespace

ConditionReport check_L1(const OperatorMap& map, int k, int samples,
                         std::uint64_t seed, double tol) {
    if (samples < 1) throw Error("check_L1: samples must be >= 1");
    ConditionReport report;
    report.condition = Condition::L1;
    report.samples = samples;
    report.passed = true;

    const auto inputs = sample_projections(map, k, samples, seed);
    const auto images = map_images(map, inputs);
    for (int i = 0; i < samples; ++i) {
        const auto& image = images[static_cast<std::size_t>(i)];
        const ProjectionCheck check = is_projection(image, tol);
        if (!check.is_projection) {
            report.passed = false;
            std::ostringstream detail;
            detail << "sample " << i << ": image is not idempotent (residual "
                   << (image.mat() * image.mat() - image.mat()).norm() << ")";
            push_witness(report, {{inputs[static_cast<std::size_t>(i)]}, detail.str()});
            continue;
        }
        if (!report.inferred_m) {
            report.inferred_m = check.rank;
        } else if (check.rank != *report.inferred_m) {
            report.passed = false;
            std::ostringstream detail;
            detail << "sample " << i << ": image rank " << check.rank
                   << " differs from inferred m = " << *report.inferred_m;
            push_witness(report, {{inputs[static_cast<std::size_t>(i)]}, detail.str()});
        }
    }
    if (!report.passed && report.witnesses.empty()) {
        throw Error("check_L1: failed without witnesses");
    }
    return report;
}

ConditionReport check_L2(const OperatorMap& map, int k, int samples,
                         std::uint64_t seed, double tol) {
    if (samples < 2) throw Error("check_L2: samples must be >= 2");
    ConditionReport report;
    report.condition = Condition::L2;
    report.samples = samples;
    report.passed = true;

    const auto inputs = sample_projections(map, k, samples, seed);
    const auto images = map_images(map, inputs);
    for (int i = 0; i < samples; ++i) {
        for (int j = i + 1; j < samples; ++j) {
            const double input_gap =
                (inputs[static_cast<std::size_t>(i)].mat() - inputs[static_cast<std::size_t>(j)].mat()).norm();
            if (input_gap <= 1e-6) continue;  // effectively the same projection
            const double image_gap =
                (images[static_cast<std::size_t>(i)].mat() - images[static_cast<std::size_t>(j)].mat()).norm();
            if (image_gap <= tol) {
                report.passed = false;
                std::ostringstream detail;
                detail << "samples (" << i << ", " << j << "): input gap " << input_gap
                       << " but image gap " << image_gap;
                push_witness(report,
                             {{inputs[static_cast<std::size_t>(i)], inputs[static_cast<std::size_t>(j)]},
                              detail.str()});
            }
        }
    }
    return report;
}

ConditionReport check_L3(const OperatorMap& map, int k, int m, int samples,
                         std::uint64_t seed, double tol) {
    if (samples < 2) throw Error("check_L3: samples must be >= 2");
    ConditionReport report;
    report.condition = Condition::L3;
    report.samples = samples;
    report.passed = true;
    report.inferred_m = m;

    const auto inputs = sample_projections(map, k, samples, seed);
    const auto images = map_images(map, inputs);
    const double proj_tol = std::max(tol, 1e-9);
    std::vector<Frame> image_frames;
    image_frames.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const auto& image = images[static_cast<std::size_t>(i)];
        const ProjectionCheck check = is_projection(image, proj_tol);
        if (!check.is_projection || check.rank != m) {
            throw PreconditionViolated("check_L3: an image is not a rank-m projection");
        }
        image_frames.push_back(image_of_projection(image, proj_tol));
    }
    for (int i = 0; i < samples; ++i) {
        for (int j = i + 1; j < samples; ++j) {
            const int common = meet(image_frames[static_cast<std::size_t>(i)],
                                    image_frames[static_cast<std::size_t>(j)])
                                   .rank();
            if (common < m - k) {
                report.passed = false;
                std::ostringstream detail;
                detail << "samples (" << i << ", " << j << "): image intersection dim "
                       << common << " below m - k = " << (m - k);
                push_witness(report,
                             {{inputs[static_cast<std::size_t>(i)], inputs[static_cast<std::size_t>(j)]},
                              detail.str()});
            }
        }
    }
    return report;
}

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::L1: return "L1";
        case Condition::L2: return "L2";
        case Condition::L3: return "L3";
    }
    return "?";
}

const char* sigma_name(Sigma s) {
    return s == Sigma::Conjugation ? "conj" : "id";
}

}  // namespace wigner
