#include "qcap/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

namespace {

constexpr double kSingularRelTol = 1e-13;

void require_nonsingular(const SymMatrix& g, const char* what) {
    const Vector values = eig_sym(g).values;
    if (values.minCoeff() <= kSingularRelTol * std::max(1.0, values.maxCoeff())) {
        throw LinearDependence(std::string(what) + ": Gram matrix is singular (linearly dependent states)");
    }
}

void require_priors(std::span<const double> priors, Index m, const char* what) {
    if (static_cast<Index>(priors.size()) != m) {
        throw InvalidInput(std::string(what) + ": expected " + std::to_string(m) + " priors, got " +
                           std::to_string(priors.size()));
    }
    require_probability_vector(priors, what);
}

}  // namespace

double orthonormality_residual(const Matrix& vectors) {
    const Index k = vectors.cols();
    return max_abs(vectors.transpose() * vectors - Matrix::Identity(k, k));
}

Measurement::Measurement(Matrix vectors, MeasurementKind kind, Frame frame)
    : vectors_(std::move(vectors)), kind_(kind), frame_(frame) {
    if (vectors_.cols() < 1 || vectors_.cols() > vectors_.rows()) {
        throw InvalidInput("Measurement: need between 1 and dim vectors");
    }
    const double residual = orthonormality_residual(vectors_);
    if (!(residual <= kOrthonormalTol)) {
        throw InvalidInput("Measurement: vectors are not orthonormal (residual " +
                           std::to_string(residual) + ")");
    }
}

ChannelMatrix::ChannelMatrix(Matrix entries) : p_(std::move(entries)) {
    if (p_.rows() < 1 || p_.cols() < 1) {
        throw InvalidInput("ChannelMatrix: empty matrix");
    }
    constexpr double tol = 1e-10;
    for (Index i = 0; i < p_.rows(); ++i) {
        for (Index j = 0; j < p_.cols(); ++j) {
            const double v = p_(i, j);
            if (!(v >= -tol && v <= 1.0 + tol)) {
                throw InvalidInput("ChannelMatrix: entry outside [0, 1]");
            }
        }
        const double row = p_.row(i).sum();
        if (std::abs(row - 1.0) > tol) {
            throw InvalidInput("ChannelMatrix: row " + std::to_string(i) + " sums to " +
                               std::to_string(row));
        }
    }
}

Matrix detection_amplitudes(const Measurement& meas, const Matrix& states) {
    if (meas.dim() != states.rows()) {
        throw InvalidInput("measurement and states live in spaces of different dimension (" +
                           std::to_string(meas.dim()) + " vs " + std::to_string(states.rows()) + ")");
    }
    return meas.vectors().transpose() * states;
}

ChannelMatrix channel_matrix(const Measurement& meas, const Matrix& states) {
    const Matrix x = detection_amplitudes(meas, states);
    return ChannelMatrix(x.transpose().cwiseAbs2());
}

Matrix gram_frame_states(const GramMatrix& g) {
    Matrix s = sqrt_psd(g.matrix).matrix();
    if (g.weighted) {
        for (Index j = 0; j < s.cols(); ++j) {
            const double xi = g.matrix(j, j);
            if (!(xi > 0.0)) {
                throw LinearDependence("gram_frame_states: zero prior on state " + std::to_string(j));
            }
            s.col(j) /= std::sqrt(xi);
        }
    }
    return s;
}

SquareRootResult square_root_measurement(const GramMatrix& g) {
    require_nonsingular(g.matrix, "square_root_measurement");
    const Index m = g.matrix.dim();
    Matrix root = sqrt_psd(g.matrix).matrix();
    Matrix states = gram_frame_states(g);
    Measurement meas(Matrix::Identity(m, m), MeasurementKind::square_root, Frame::gram);
    ChannelMatrix channel = channel_matrix(meas, states);
    return {std::move(meas), std::move(channel), std::move(root), std::move(states)};
}

Measurement square_root_measurement(const StateEmbedding& states, std::span<const double> priors) {
    const Index m = states.size();
    require_priors(priors, m, "square_root_measurement");
    Matrix weighted = states.vectors;
    for (Index j = 0; j < m; ++j) weighted.col(j) *= std::sqrt(priors[static_cast<std::size_t>(j)]);
    const SymMatrix g = SymMatrix::symmetrized(weighted.transpose() * weighted);
    require_nonsingular(g, "square_root_measurement");
    // rho^{-1/2} restricted to the span acts on the weighted states as weighted * G^{-1/2}.
    Matrix mu = weighted * inv_sqrt_pd(g, kSingularRelTol).matrix();
    return Measurement(std::move(mu), MeasurementKind::square_root, Frame::embedding);
}

OptimalityReport check_optimality(const Measurement& meas, const Matrix& states,
                                  std::span<const double> priors, double tol,
                                  CertificationPath path) {
    const Index m = states.cols();
    if (meas.size() != m) {
        throw InvalidInput("check_optimality: " + std::to_string(meas.size()) +
                           " measurement vectors for " + std::to_string(m) + " states");
    }
    require_priors(priors, m, "check_optimality");
    const Matrix x = detection_amplitudes(meas, states);
    auto xi = [&](Index i) { return priors[static_cast<std::size_t>(i)]; };

    OptimalityReport report;
    Matrix upsilon(m, m);
    double correct = 0.0;
    for (Index i = 0; i < m; ++i) {
        correct += xi(i) * x(i, i) * x(i, i);
        for (Index j = 0; j < m; ++j) {
            upsilon(i, j) = xi(i) * x(i, i) * x(j, i);
            const double lhs = xi(i) * x(i, i) * x(j, i);
            const double rhs = xi(j) * x(i, j) * x(j, j);
            report.cond_i_residual = std::max(report.cond_i_residual, std::abs(lhs - rhs));
        }
    }
    report.error_probability = 1.0 - correct;

    if (path == CertificationPath::upsilon_prime) {
        report.cond_ii_min_eig = eig_sym(SymMatrix::symmetrized(upsilon)).values.minCoeff();
    } else {
        double lowest = std::numeric_limits<double>::infinity();
        for (Index k = 0; k < m; ++k) {
            Matrix t = upsilon - xi(k) * x.col(k) * x.col(k).transpose();
            lowest = std::min(lowest, eig_sym(SymMatrix::symmetrized(t)).values.minCoeff());
        }
        report.cond_ii_min_eig = lowest;
    }
    report.is_optimal = report.cond_i_residual <= tol && report.cond_ii_min_eig >= -tol;
    return report;
}

OptimalityReport check_optimality(const Measurement& meas, const StateEmbedding& states,
                                  std::span<const double> priors, double tol,
                                  CertificationPath path) {
    if (meas.frame() != Frame::embedding) {
        throw InvalidInput("check_optimality: measurement is not in the embedding frame");
    }
    return check_optimality(meas, states.vectors, priors, tol, path);
}

OptimalityReport check_optimality(const Measurement& meas, const GramMatrix& g,
                                  std::span<const double> priors, double tol,
                                  CertificationPath path) {
    if (meas.frame() != Frame::gram) {
        throw InvalidInput("check_optimality: measurement is not in the gram frame");
    }
    return check_optimality(meas, gram_frame_states(g), priors, tol, path);
}

double helstrom_error(double overlap, double xi1) {
    if (!(xi1 >= 0.0 && xi1 <= 1.0)) {
        throw InvalidInput("helstrom_error: prior must lie in [0, 1]");
    }
    const double s2 = overlap * overlap;
    const double disc = 1.0 - 4.0 * xi1 * (1.0 - xi1) * s2;
    // (1 - sqrt(disc)) / 2 without cancellation for nearly orthogonal states.
    return 2.0 * xi1 * (1.0 - xi1) * s2 / (1.0 + std::sqrt(std::max(disc, 0.0)));
}

HelstromResult helstrom_binary(double kappa, double xi1) {
    require_kappa(kappa);
    if (!(xi1 > 0.0 && xi1 < 1.0)) {
        throw InvalidInput("helstrom_binary: xi1 must lie in (0, 1)");
    }
    const LetterPair letters = embed_binary_letters(kappa);
    const double xi2 = 1.0 - xi1;
    // Outcome 1 projects onto the positive part of xi1|+><+| - xi2|-><-|.
    const Matrix delta = xi1 * letters.plus * letters.plus.transpose() -
                         xi2 * letters.minus * letters.minus.transpose();
    const EigenDecomp ed = eig_sym(SymMatrix::symmetrized(delta));
    Matrix w(2, 2);
    w.col(0) = ed.vectors.col(1);
    w.col(1) = ed.vectors.col(0);
    if (w.col(0).dot(letters.plus) < 0.0) w.col(0) *= -1.0;
    if (w.col(1).dot(letters.minus) < 0.0) w.col(1) *= -1.0;
    return {Measurement(std::move(w), MeasurementKind::helstrom, Frame::embedding),
            helstrom_error(kappa, xi1)};
}

BayesResult bayes_cost_reduction(const Matrix& states, std::span<const double> priors,
                                 const Measurement& init, double tol, int max_sweeps) {
    const Index m = states.cols();
    if (init.size() != m || init.dim() != states.rows()) {
        throw InvalidInput("bayes_cost_reduction: initial measurement does not match the states");
    }
    require_priors(priors, m, "bayes_cost_reduction");
    require_nonsingular(SymMatrix::symmetrized(states.transpose() * states), "bayes_cost_reduction");
    if (max_sweeps < 0) {
        throw InvalidInput("bayes_cost_reduction: max_sweeps must be non-negative");
    }

    Matrix basis = init.vectors();
    Matrix x = basis.transpose() * states;
    auto xi = [&](Index i) { return priors[static_cast<std::size_t>(i)]; };
    auto error_now = [&] {
        double correct = 0.0;
        for (Index i = 0; i < m; ++i) correct += xi(i) * x(i, i) * x(i, i);
        return 1.0 - correct;
    };
    auto residual_now = [&] {
        double r = 0.0;
        for (Index i = 0; i < m; ++i) {
            for (Index j = i + 1; j < m; ++j) {
                r = std::max(r, std::abs(xi(i) * x(i, i) * x(j, i) - xi(j) * x(i, j) * x(j, j)));
            }
        }
        return r;
    };

    BayesResult result{init, {}, {error_now()}, 0, false};
    while (result.sweeps < max_sweeps && residual_now() > tol) {
        for (Index i = 0; i < m; ++i) {
            for (Index j = i + 1; j < m; ++j) {
                // Correct-decision probability of the pair after rotating (w_i, w_j) by phi:
                //   f(phi) = p cos^2 + 2 q cos sin + r sin^2.
                const double p = xi(i) * x(i, i) * x(i, i) + xi(j) * x(j, j) * x(j, j);
                const double r = xi(i) * x(j, i) * x(j, i) + xi(j) * x(i, j) * x(i, j);
                const double q = xi(i) * x(i, i) * x(j, i) - xi(j) * x(j, j) * x(i, j);
                if (q == 0.0 && p >= r) continue;
                // phi maximizes f, so f(phi) >= f(0) = p. The gain itself drops below
                // rounding long before q does, so it is not used as the stopping test.
                const double phi = 0.5 * std::atan2(2.0 * q, p - r);
                if (phi == 0.0) continue;
                const double c = std::cos(phi);
                const double s = std::sin(phi);

                const Eigen::RowVectorXd xi_row = x.row(i);
                x.row(i) = c * xi_row + s * x.row(j);
                x.row(j) = -s * xi_row + c * x.row(j);
                const Vector wi = basis.col(i);
                basis.col(i) = c * wi + s * basis.col(j);
                basis.col(j) = -s * wi + c * basis.col(j);
            }
        }
        ++result.sweeps;
        result.error_history.push_back(error_now());
    }

    // Re-orthonormalize against drift accumulated over many rotations.
    Eigen::HouseholderQR<Matrix> qr(basis);
    Matrix q = qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols());
    for (Index k = 0; k < m; ++k) {
        if (q.col(k).dot(basis.col(k)) < 0.0) q.col(k) *= -1.0;
    }
    result.measurement = Measurement(std::move(q), MeasurementKind::optimized, init.frame());
    result.report = check_optimality(result.measurement, states, priors, tol);
    result.converged = result.report.cond_i_residual <= tol;
    return result;
}

BayesResult bayes_cost_reduction(const StateEmbedding& states, std::span<const double> priors,
                                 const Measurement& init, double tol, int max_sweeps) {
    return bayes_cost_reduction(states.vectors, priors, init, tol, max_sweeps);
}

Measurement product_pom(const Measurement& base, int n) {
    if (n < 1) {
        throw InvalidInput("product_pom: n must be at least 1");
    }
    double dim = 1.0;
    double outcomes = 1.0;
    for (int k = 0; k < n; ++k) {
        dim *= static_cast<double>(base.dim());
        outcomes *= static_cast<double>(base.size());
    }
    if (dim > static_cast<double>(kMaxProductOutcomes) || outcomes > static_cast<double>(kMaxProductOutcomes)) {
        throw ResourceLimit("product_pom: tensor power exceeds 2^20 dimensions");
    }
    Matrix v = base.vectors();
    for (int k = 1; k < n; ++k) v = kron(v, base.vectors());
    return Measurement(std::move(v), MeasurementKind::product, base.frame());
}

double verify_sqm_orthonormal(const GramMatrix& g) {
    require_nonsingular(g.matrix, "verify_sqm_orthonormal");
    const Matrix root = sqrt_psd(g.matrix).matrix();
    const Eigen::PartialPivLU<Matrix> lu(root);
    // <mu_i|mu_j> = (G^{-1/2} G G^{-1/2})_ij
    const Matrix left = lu.solve(g.matrix.matrix());
    const Matrix overlaps = lu.solve(left.transpose()).transpose();
    return max_abs(overlaps - Matrix::Identity(root.rows(), root.cols()));
}

}  // namespace qcap
