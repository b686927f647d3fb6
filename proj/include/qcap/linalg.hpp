#pragma once

// Dense real-symmetric linear algebra shared by every other module.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultClampTol = 1e-10;

/// Real symmetric matrix. Symmetry is checked exactly at construction; use
/// `symmetrized` for matrices that are symmetric only up to rounding.
class SymMatrix {
public:
    explicit SymMatrix(Matrix entries);

    static SymMatrix identity(Index dim);
    static SymMatrix symmetrized(const Matrix& entries);

    Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(Index i, Index j) const { return m_(i, j); }

private:
    Matrix m_;
};

struct EigenDecomp {
    Vector values;   // ascending
    Matrix vectors;  // columns are the eigenvectors
};

EigenDecomp eig_sym(const SymMatrix& m);

/// Principal square root. Eigenvalues in [-clamp_tol, 0) are treated as zero;
/// anything more negative throws NotPsd.
SymMatrix sqrt_psd(const SymMatrix& m, double clamp_tol = kDefaultClampTol);

/// Inverse principal square root of a positive definite matrix. Throws
/// LinearDependence when the smallest eigenvalue is below
/// `rel_tol * max(1, largest eigenvalue)`.
SymMatrix inv_sqrt_pd(const SymMatrix& m, double rel_tol = 1e-13);

bool is_positive_definite(const SymMatrix& m, double tol);

/// ±1 matrix of the Sylvester doubling rule H_{2k} = [[H_k, H_k], [H_k, -H_k]].
class HadamardMatrix {
public:
    HadamardMatrix(std::size_t order, std::vector<int> entries);

    std::size_t order() const noexcept { return order_; }
    int operator()(std::size_t row, std::size_t col) const { return entries_[row * order_ + col]; }
    Matrix to_matrix() const;

private:
    std::size_t order_;
    std::vector<int> entries_;
};

HadamardMatrix hadamard(std::size_t order);

/// In-place unnormalized transform x <- H x with H in the same (Sylvester) order as `hadamard`.
void walsh_hadamard(std::span<double> x);

bool is_power_of_two(std::size_t value) noexcept;

double max_abs(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qcap
