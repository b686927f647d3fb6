#include "qcap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

SymMatrix::SymMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols()) {
        throw InvalidInput("SymMatrix: expected a non-empty square matrix, got " +
                           std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    for (Index i = 0; i < m_.rows(); ++i) {
        for (Index j = i + 1; j < m_.cols(); ++j) {
            if (m_(i, j) != m_(j, i)) {
                throw InvalidInput("SymMatrix: entries (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") and transpose differ");
            }
        }
    }
}

SymMatrix SymMatrix::identity(Index dim) {
    return SymMatrix(Matrix::Identity(dim, dim));
}

SymMatrix SymMatrix::symmetrized(const Matrix& entries) {
    if (entries.rows() != entries.cols()) {
        throw InvalidInput("SymMatrix::symmetrized: matrix is not square");
    }
    Matrix s = 0.5 * (entries + entries.transpose());
    return SymMatrix(std::move(s));
}

EigenDecomp eig_sym(const SymMatrix& m) {
    if (!m.matrix().allFinite()) {
        throw InvalidInput("eig_sym: matrix has non-finite entries");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
    if (solver.info() != Eigen::Success) {
        throw InvalidInput("eig_sym: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Q f(Λ) Qᵀ, symmetrized so the result satisfies the exact-symmetry invariant.
SymMatrix spectral_apply(const EigenDecomp& ed, const Vector& mapped) {
    Matrix r = ed.vectors * mapped.asDiagonal() * ed.vectors.transpose();
    return SymMatrix::symmetrized(r);
}

}  // namespace

SymMatrix sqrt_psd(const SymMatrix& m, double clamp_tol) {
    const EigenDecomp ed = eig_sym(m);
    Vector roots(ed.values.size());
    for (Index k = 0; k < ed.values.size(); ++k) {
        const double lambda = ed.values(k);
        if (lambda < -clamp_tol) {
            throw NotPsd("sqrt_psd: eigenvalue " + std::to_string(lambda) +
                         " is below -clamp_tol (linearly dependent states?)");
        }
        roots(k) = std::sqrt(std::max(lambda, 0.0));
    }
    return spectral_apply(ed, roots);
}

SymMatrix inv_sqrt_pd(const SymMatrix& m, double rel_tol) {
    const EigenDecomp ed = eig_sym(m);
    const double top = std::max(1.0, ed.values.maxCoeff());
    if (ed.values.minCoeff() <= rel_tol * top) {
        throw LinearDependence("inv_sqrt_pd: matrix is singular (smallest eigenvalue " +
                               std::to_string(ed.values.minCoeff()) + ")");
    }
    Vector inv = ed.values.array().sqrt().inverse();
    return spectral_apply(ed, inv);
}

bool is_positive_definite(const SymMatrix& m, double tol) {
    return eig_sym(m).values.minCoeff() > tol;
}

HadamardMatrix::HadamardMatrix(std::size_t order, std::vector<int> entries)
    : order_(order), entries_(std::move(entries)) {
    if (entries_.size() != order_ * order_) {
        throw InvalidInput("HadamardMatrix: entry count does not match order");
    }
}

Matrix HadamardMatrix::to_matrix() const {
    Matrix h(static_cast<Index>(order_), static_cast<Index>(order_));
    for (std::size_t r = 0; r < order_; ++r) {
        for (std::size_t c = 0; c < order_; ++c) {
            h(static_cast<Index>(r), static_cast<Index>(c)) = (*this)(r, c);
        }
    }
    return h;
}

bool is_power_of_two(std::size_t value) noexcept {
    return value != 0 && (value & (value - 1)) == 0;
}

HadamardMatrix hadamard(std::size_t order) {
    if (!is_power_of_two(order)) {
        throw InvalidInput("hadamard: order " + std::to_string(order) + " is not a power of two");
    }
    std::vector<int> h{1};
    for (std::size_t k = 1; k < order; k *= 2) {
        std::vector<int> next(4 * k * k);
        const std::size_t width = 2 * k;
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) {
                const int v = h[r * k + c];
                next[r * width + c] = v;
                next[r * width + c + k] = v;
                next[(r + k) * width + c] = v;
                next[(r + k) * width + c + k] = -v;
            }
        }
        h = std::move(next);
    }
    return HadamardMatrix(order, std::move(h));
}

void walsh_hadamard(std::span<double> x) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) {
        throw InvalidInput("walsh_hadamard: length " + std::to_string(n) + " is not a power of two");
    }
    for (std::size_t half = n / 2; half >= 1; half /= 2) {
        for (std::size_t base = 0; base < n; base += 2 * half) {
            for (std::size_t j = base; j < base + half; ++j) {
                const double top = x[j];
                const double bottom = x[j + half];
                x[j] = top + bottom;
                x[j + half] = top - bottom;
            }
        }
    }
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace qcap
