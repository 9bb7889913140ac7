#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wigner/hermitian.hpp"
#include "wigner/rng.hpp"

namespace wigner {

// Zero-angle cutoff for principal angles; angles at or below it count as an
// intersection direction.
inline constexpr double kAngleTol = 1e-7;

// Commutator tolerance used when a compatibility test needs a default.
inline constexpr double kCompatTol = 1e-8;

// A k-dimensional subspace of C^n represented by n x k orthonormal columns.
// Rank-0 frames (no columns) are first-class values.
class Frame {
public:
    explicit Frame(Eigen::MatrixXcd columns, double tol = 1e-10);

    int ambient_dim() const { return static_cast<int>(cols_.rows()); }
    int rank() const { return static_cast<int>(cols_.cols()); }
    const Eigen::MatrixXcd& columns() const { return cols_; }

    static Frame empty(int ambient_dim);
    static Frame standard(int ambient_dim);  // all of C^n

private:
    Eigen::MatrixXcd cols_;
};

struct PrincipalAngleProfile {
    std::vector<double> angles;  // ascending, in [0, pi/2]
};

// Orthonormal frame spanning the column space of `vectors`; RankDeficient if
// the numerical rank at tol is below the column count.
Frame orthonormalize(const Eigen::MatrixXcd& vectors, double tol);

HermitianOperator projection_of(const Frame& x);

Frame image_of_projection(const HermitianOperator& p, double tol);

// Frame of X ∩ Y: principal directions with angle <= angle_tol.
Frame meet(const Frame& x, const Frame& y, double angle_tol = kAngleTol);

Frame join(const Frame& x, const Frame& y);

Frame ortho_complement(const Frame& x);

PrincipalAngleProfile principal_angles(const Frame& x, const Frame& y);

// Commuting projections: ||P_X P_Y - P_Y P_X||_F <= tol.
bool is_compatible(const Frame& x, const Frame& y, double tol = kCompatTol);

// ||P_X - P_Y||_F for equal-rank subspaces; zero iff they coincide.
double gap_distance(const Frame& x, const Frame& y);

// True iff every column of inner lies in outer within tol.
bool contains(const Frame& outer, const Frame& inner, double tol);

// Haar-style random frame from a seeded generator.
Frame random_frame(Rng& rng, int n, int k);

// The part of `outer` orthogonal to `inner`: outer ⊖ (outer ∩ inner).
Frame complement_within(const Frame& inner, const Frame& outer);

}  // namespace wigner
