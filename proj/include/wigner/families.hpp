#pragma once

#include <optional>

#include "wigner/maps.hpp"

namespace wigner {

// A constructed operator together with the data that generated it, kept for
// oracle comparisons. The ground truth is never consulted by the analysis
// path.
struct GeneratedOperator {
    OperatorMap map;
    std::optional<SemilinearMap> ground_truth_u;
    std::optional<Frame> ground_truth_w;
};

// Conjugation by a random isometry C^n -> C^{n'} (unitary when n' = n).
GeneratedOperator generate_lu(int n, int n_prime, int k, Sigma sigma, std::uint64_t seed);

// tr/k padding construction with a random (m-k)-dimensional W in C^{n'}.
GeneratedOperator generate_luw(int n, int n_prime, int k, int m, Sigma sigma,
                               std::uint64_t seed);

GeneratedOperator generate_lperp(int k, int n);

// Collapse onto a random rank-k projection; fails injectivity by design.
GeneratedOperator generate_collapse(int n, int k, std::uint64_t seed);

// L_k^perp ∘ L_U on C^n with n = 2k and a random unitary U.
GeneratedOperator generate_lperp_lu(int n, int k, Sigma sigma, std::uint64_t seed);

}  // namespace wigner
