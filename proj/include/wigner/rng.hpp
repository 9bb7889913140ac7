#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace wigner {

// Deterministic seeded generator. Doubles are built from the raw engine
// output (not from std::*_distribution) so that a given seed produces the
// same stream on every platform. fork() derives an independent child stream;
// forked children depend only on (seed, stream index), never on how much of
// the parent stream has been consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double gaussian();
    std::complex<double> gaussian_complex();  // E|z|^2 = 1
    int uniform_int(int lo, int hi);          // inclusive bounds

    Rng fork(std::uint64_t stream) const;

    Eigen::MatrixXcd gaussian_matrix(int rows, int cols);
    Eigen::VectorXcd gaussian_vector(int n);
    Eigen::MatrixXcd unitary(int n);  // Haar distributed

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wigner
