#include "wigner/hermitian.hpp"

#include <cmath>
#include <sstream>

namespace wigner {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, double tol_sym)
    : mat_(std::move(entries)) {
    if (mat_.rows() != mat_.cols()) {
        throw DimensionMismatch("HermitianOperator: matrix is not square");
    }
    const double asym = (mat_ - mat_.adjoint()).norm();
    if (asym > tol_sym) {
        std::ostringstream msg;
        msg << "HermitianOperator: symmetry residual " << asym << " exceeds " << tol_sym;
        throw NonHermitianInput(msg.str());
    }
}

HermitianOperator HermitianOperator::zero(int n) {
    return HermitianOperator(Eigen::MatrixXcd::Zero(n, n));
}

HermitianOperator HermitianOperator::identity(int n) {
    return HermitianOperator(Eigen::MatrixXcd::Identity(n, n));
}

HermitianBasis::HermitianBasis(int dim) : n_(dim) {
    if (dim < 1) throw DimensionMismatch("HermitianBasis: dim must be positive");
    pairs_.reserve(static_cast<std::size_t>(dim) * (dim - 1) / 2);
    for (int j = 0; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) pairs_.emplace_back(j, k);
}

int HermitianBasis::sym_index(int j, int k) const {
    // pairs are lexicographic: offset of (j,k) is j*n - j(j+1)/2 + (k-j-1)
    const int t = j * n_ - j * (j + 1) / 2 + (k - j - 1);
    return n_ + 2 * t;
}

int HermitianBasis::asym_index(int j, int k) const { return sym_index(j, k) + 1; }

Eigen::MatrixXcd HermitianBasis::element(int index) const {
    if (index < 0 || index >= size()) {
        throw DimensionMismatch("HermitianBasis::element: index out of range");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
    if (index < n_) {
        m(index, index) = 1.0;
        return m;
    }
    const int t = (index - n_) / 2;
    const auto [j, k] = pairs_[static_cast<std::size_t>(t)];
    if ((index - n_) % 2 == 0) {
        m(j, k) = kInvSqrt2;
        m(k, j) = kInvSqrt2;
    } else {
        m(k, j) = std::complex<double>(0.0, kInvSqrt2);
        m(j, k) = std::complex<double>(0.0, -kInvSqrt2);
    }
    return m;
}

Spectrum spectral_decompose(const HermitianOperator& a, double tol) {
    const Eigen::MatrixXcd sym = 0.5 * (a.mat() + a.mat().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error("spectral_decompose: eigensolver failed to converge");
    }
    Spectrum s;
    s.eigenvalues = solver.eigenvalues().reverse();
    s.eigenvectors = solver.eigenvectors().rowwise().reverse();
    const Eigen::MatrixXcd rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    if ((rebuilt - a.mat()).norm() > tol) {
        throw Error("spectral_decompose: reconstruction error above tolerance");
    }
    return s;
}

int rank_eps(const HermitianOperator& a, double tol) {
    if (tol <= 0.0) throw Error("rank_eps: tol must be positive");
    const Spectrum s = spectral_decompose(a);
    int count = 0;
    for (int i = 0; i < s.eigenvalues.size(); ++i) {
        if (std::abs(s.eigenvalues(i)) > tol) ++count;
    }
    return count;
}

ProjectionCheck is_projection(const HermitianOperator& a, double tol) {
    if (tol <= 0.0) throw Error("is_projection: tol must be positive");
    ProjectionCheck result;
    const double residual = (a.mat() * a.mat() - a.mat()).norm();
    if (residual <= tol) {
        result.is_projection = true;
        result.rank = rank_eps(a, tol);
    }
    return result;
}

Eigen::VectorXd real_coords(const HermitianOperator& a, const HermitianBasis& basis) {
    if (a.dim() != basis.dim()) {
        throw DimensionMismatch("real_coords: operator and basis dims differ");
    }
    const int n = basis.dim();
    Eigen::VectorXd c(basis.size());
    for (int j = 0; j < n; ++j) c(j) = a.mat()(j, j).real();
    int idx = n;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const std::complex<double> e = a.mat()(j, k);
            c(idx++) = M_SQRT2 * e.real();
            c(idx++) = -M_SQRT2 * e.imag();
        }
    }
    return c;
}

HermitianOperator from_coords(const Eigen::VectorXd& coords, const HermitianBasis& basis) {
    if (coords.size() != basis.size()) {
        throw DimensionMismatch("from_coords: coordinate length is not dim^2");
    }
    const int n = basis.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = coords(j);
    int idx = n;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double cs = coords(idx++);
            const double ca = coords(idx++);
            const std::complex<double> e(cs * kInvSqrt2, -ca * kInvSqrt2);
            m(j, k) = e;
            m(k, j) = std::conj(e);
        }
    }
    return HermitianOperator(std::move(m));
}

}  // namespace wigner
