#include "wigner/families.hpp"

#include "wigner/rng.hpp"

namespace wigner {

GeneratedOperator generate_lu(int n, int n_prime, int k, Sigma sigma, std::uint64_t seed) {
    if (n_prime < n) throw BadRank("generate_lu: target dim below source dim");
    if (k <= 0 || k >= n) throw BadRank("generate_lu: need 0 < k < n");
    Rng rng(seed);
    const Eigen::MatrixXcd m =
        (n_prime == n) ? rng.unitary(n) : random_frame(rng, n_prime, n).columns();
    SemilinearMap u(m, sigma);
    GeneratedOperator out{make_L_U(u), u, Frame::empty(n_prime)};
    out.map.k = k;
    out.map.m = k;
    return out;
}

GeneratedOperator generate_luw(int n, int n_prime, int k, int m, Sigma sigma,
                               std::uint64_t seed) {
    if (k <= 0 || k >= n) throw BadRank("generate_luw: need 0 < k < n");
    if (m < k) throw BadRank("generate_luw: need m >= k");
    const int rank_w = m - k;
    if (n_prime < n + rank_w) {
        throw BadRank("generate_luw: target dim too small for an isometry plus W");
    }
    if (m >= n_prime) throw BadRank("generate_luw: need m < n_prime");
    Rng rng(seed);
    const Frame w = random_frame(rng, n_prime, rank_w);
    const Frame complement = ortho_complement(w);
    const Frame inner = random_frame(rng, complement.rank(), n);
    SemilinearMap u(complement.columns() * inner.columns(), sigma);
    GeneratedOperator out{make_L_UW(u, w, k), u, w};
    return out;
}

GeneratedOperator generate_lperp(int k, int n) {
    return GeneratedOperator{make_L_perp(k, n), std::nullopt, std::nullopt};
}

GeneratedOperator generate_collapse(int n, int k, std::uint64_t seed) {
    const HermitianOperator p = random_rank_k_projection(n, k, seed);
    return GeneratedOperator{make_trace_collapse(p, k), std::nullopt, std::nullopt};
}

GeneratedOperator generate_lperp_lu(int n, int k, Sigma sigma, std::uint64_t seed) {
    if (n != 2 * k) throw BadRank("generate_lperp_lu: need n = 2k");
    GeneratedOperator base = generate_lu(n, n, k, sigma, seed);
    base.map = compose(make_L_perp(k, n), base.map);
    base.map.k = k;
    base.map.m = k;
    return base;
}

}  // namespace wigner
