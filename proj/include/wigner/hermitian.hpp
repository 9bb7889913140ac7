#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wigner/errors.hpp"

namespace wigner {

// Default tolerances for operators normalized so that eigenvalues are O(1).
inline constexpr double kTolSym = 1e-10;   // Hermitian symmetry residual
inline constexpr double kTolSpec = 1e-9;   // spectral reconstruction
inline constexpr double kTolRank = 1e-9;   // eigenvalue magnitude cutoff

// A finite-rank self-adjoint operator on C^n, stored as a dense matrix.
class HermitianOperator {
public:
    explicit HermitianOperator(Eigen::MatrixXcd entries, double tol_sym = kTolSym);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd& mat() const { return mat_; }
    double trace() const { return mat_.trace().real(); }

    static HermitianOperator zero(int n);
    static HermitianOperator identity(int n);

private:
    Eigen::MatrixXcd mat_;
};

// Canonical orthonormal basis of the real vector space of n x n Hermitian
// matrices under <A,B> = tr(AB). Ordering is fixed and serialization-stable:
// indices 0..n-1 are the diagonal units D_j = E_jj; then for each pair
// j < k in lexicographic order, S_jk = (E_jk + E_kj)/sqrt(2) followed by
// A_jk = (i E_kj - i E_jk)/sqrt(2).
class HermitianBasis {
public:
    explicit HermitianBasis(int dim);

    int dim() const { return n_; }
    int size() const { return n_ * n_; }

    Eigen::MatrixXcd element(int index) const;

    // Index of S_jk / A_jk for a pair j < k.
    int sym_index(int j, int k) const;
    int asym_index(int j, int k) const;

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;  // lexicographic j < k
};

struct Spectrum {
    Eigen::VectorXd eigenvalues;    // sorted descending
    Eigen::MatrixXcd eigenvectors;  // unitary; column i pairs with eigenvalue i
};

struct ProjectionCheck {
    bool is_projection = false;
    int rank = -1;  // meaningful only when is_projection
};

Spectrum spectral_decompose(const HermitianOperator& a, double tol = kTolSpec);

// Number of eigenvalues with |lambda| > tol.
int rank_eps(const HermitianOperator& a, double tol);

// True iff ||A^2 - A||_F <= tol; rank is then rank_eps(A, tol).
ProjectionCheck is_projection(const HermitianOperator& a, double tol);

// Coordinates c_a = tr(A B_a) of a Hermitian operator in the canonical basis.
Eigen::VectorXd real_coords(const HermitianOperator& a, const HermitianBasis& basis);

// Inverse of real_coords; the result is Hermitian by construction.
HermitianOperator from_coords(const Eigen::VectorXd& coords, const HermitianBasis& basis);

}  // namespace wigner
