#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigner/hermitian.hpp"
#include "wigner/subspace.hpp"

namespace wigner {

enum class Sigma { Identity, Conjugation };

// A linear (sigma = Identity) or conjugate-linear (sigma = Conjugation)
// isometry between complex Hilbert spaces.
struct SemilinearMap {
    Eigen::MatrixXcd matrix;  // n'' x n, orthonormal columns
    Sigma sigma = Sigma::Identity;

    SemilinearMap(Eigen::MatrixXcd m, Sigma s, double tol = 1e-8);

    int source_dim() const { return static_cast<int>(matrix.cols()); }
    int target_dim() const { return static_cast<int>(matrix.rows()); }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
    Frame map_subspace(const Frame& x) const;
};

// A real-linear map F_s(C^n) -> F_s(C^n') stored as a real n'^2 x n^2 matrix
// in the canonical Hermitian basis coordinates.
struct OperatorMap {
    int n = 0;
    int n_prime = 0;
    std::optional<int> k;
    std::optional<int> m;
    Eigen::MatrixXd matrix;
};

enum class Condition { L1, L2, L3 };

struct ConditionWitness {
    std::vector<HermitianOperator> inputs;
    std::string detail;
};

struct ConditionReport {
    Condition condition = Condition::L1;
    int samples = 0;
    bool passed = false;
    std::vector<ConditionWitness> witnesses;
    std::optional<int> inferred_m;
};

// A |-> U A U* (entrywise-conjugating A first when U is conjugate-linear).
OperatorMap make_L_U(const SemilinearMap& u);

// A |-> tr(A)/k * Id - A on C^n; sends rank-k projections to the
// projections on the orthogonal complements of their images.
OperatorMap make_L_perp(int k, int n);

// Acts as L_U on the complement of W and as tr(A)/k * Id on W; sends the
// projection on X to the projection on U(X) ⊕ W. Requires range(U) ⊥ W.
OperatorMap make_L_UW(const SemilinearMap& u, const Frame& w, int k);

// A |-> tr(A)/k * P; collapses every rank-k projection onto P.
OperatorMap make_trace_collapse(const HermitianOperator& p, int k);

OperatorMap compose(const OperatorMap& outer, const OperatorMap& inner);
OperatorMap scale(const OperatorMap& map, double factor);
OperatorMap add(const OperatorMap& a, const OperatorMap& b);

HermitianOperator apply(const OperatorMap& map, const HermitianOperator& a);

// Haar-style random rank-k projection on C^n.
HermitianOperator random_rank_k_projection(int n, int k, std::uint64_t seed);

// Sampled falsification of conditions (L1)-(L3). Sample i depends only on
// (seed, i), so reports are reproducible and thread-count independent.
ConditionReport check_L1(const OperatorMap& map, int k, int samples,
                         std::uint64_t seed, double tol);
ConditionReport check_L2(const OperatorMap& map, int k, int samples,
                         std::uint64_t seed, double tol);
ConditionReport check_L3(const OperatorMap& map, int k, int m, int samples,
                         std::uint64_t seed, double tol);

const char* condition_name(Condition c);
const char* sigma_name(Sigma s);

}  // namespace wigner
