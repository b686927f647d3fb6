#pragma once

// Minimum-error detection of linearly independent pure states.
//
// A measurement is a set of orthonormal vectors |w_i> given in some frame; the
// states it is applied to must be expressed in the same frame. Two frames are
// used:
//   - embedding: explicit coordinates of the product space (see codeword_states),
//   - gram: the M-dimensional frame in which the square-root measurement of a
//     given Gram matrix is the standard basis (states = columns of sqrt(Gram)).
//
// Amplitudes are collected in X = (<w_i|rho_j>), and everything below is real.

#include <span>
#include <vector>

#include "qcap/ensembles.hpp"
#include "qcap/linalg.hpp"

namespace qcap {

enum class MeasurementKind { square_root, optimized, product, helstrom };
enum class Frame { embedding, gram };

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kOptimalityTol = 1e-10;

class Measurement {
public:
    /// Throws InvalidInput if the columns of `vectors` are not orthonormal within kOrthonormalTol.
    Measurement(Matrix vectors, MeasurementKind kind, Frame frame);

    const Matrix& vectors() const noexcept { return vectors_; }
    MeasurementKind kind() const noexcept { return kind_; }
    Frame frame() const noexcept { return frame_; }
    Index size() const noexcept { return vectors_.cols(); }
    Index dim() const noexcept { return vectors_.rows(); }

private:
    Matrix vectors_;
    MeasurementKind kind_;
    Frame frame_;
};

/// max |<w_i|w_j> - delta_ij| over the columns.
double orthonormality_residual(const Matrix& vectors);

/// Row-stochastic P(j|i): row i is the input, column j the outcome.
class ChannelMatrix {
public:
    explicit ChannelMatrix(Matrix entries);

    const Matrix& matrix() const noexcept { return p_; }
    Index inputs() const noexcept { return p_.rows(); }
    Index outputs() const noexcept { return p_.cols(); }
    double operator()(Index i, Index j) const { return p_(i, j); }

private:
    Matrix p_;
};

/// X = (<w_i|rho_j>) for measurement vectors and state columns in the same frame.
Matrix detection_amplitudes(const Measurement& meas, const Matrix& states);

/// P(j|i) = X_ji^2.
ChannelMatrix channel_matrix(const Measurement& meas, const Matrix& states);

/// Codeword states as columns in the gram frame of `g`: sqrt(Gram) for an
/// unweighted Gram, sqrt(Gram) with column j divided by sqrt(xi_j) for a weighted one.
Matrix gram_frame_states(const GramMatrix& g);

struct SquareRootResult {
    Measurement measurement;  // identity in the gram frame
    ChannelMatrix channel;
    Matrix sqrt_gram;
    Matrix states;  // gram-frame coordinates of the states
};

/// Square-root measurement computed from the Gram matrix alone. Throws
/// LinearDependence when the Gram matrix is singular.
SquareRootResult square_root_measurement(const GramMatrix& g);

/// Square-root measurement vectors rho^{-1/2} sqrt(xi_i)|rho_i> in the embedding frame.
Measurement square_root_measurement(const StateEmbedding& states, std::span<const double> priors);

enum class CertificationPath {
    upsilon_prime,  // Upsilon' = (xi_i X_ii X_ji) > 0
    t_family,       // T^(m) = (xi_i X_ii X_ji - xi_m X_im X_jm) >= 0 for every m
};

struct OptimalityReport {
    double cond_i_residual = 0.0;  // max |xi_i X_ii X_ji - xi_j X_ij X_jj|
    double cond_ii_min_eig = 0.0;  // min eigenvalue of the symmetrized Upsilon' (or of all T^(m))
    bool is_optimal = false;
    double error_probability = 0.0;  // 1 - sum xi_i X_ii^2
};

OptimalityReport check_optimality(const Measurement& meas, const Matrix& states,
                                  std::span<const double> priors, double tol = kOptimalityTol,
                                  CertificationPath path = CertificationPath::upsilon_prime);

OptimalityReport check_optimality(const Measurement& meas, const StateEmbedding& states,
                                  std::span<const double> priors, double tol = kOptimalityTol,
                                  CertificationPath path = CertificationPath::upsilon_prime);

/// `meas` must be in the gram frame of `g`.
OptimalityReport check_optimality(const Measurement& meas, const GramMatrix& g,
                                  std::span<const double> priors, double tol = kOptimalityTol,
                                  CertificationPath path = CertificationPath::upsilon_prime);

/// Closed-form minimum error for two pure states with |<rho_1|rho_2>| = overlap.
double helstrom_error(double overlap, double xi1);

struct HelstromResult {
    Measurement measurement;  // embedding frame of embed_binary_letters
    double error;
};

/// Optimal projective measurement for the letters |+>, |-> with priors (xi1, 1 - xi1).
HelstromResult helstrom_binary(double kappa, double xi1);

struct BayesResult {
    Measurement measurement;
    OptimalityReport report;
    std::vector<double> error_history;  // error before the first sweep, then after each sweep
    int sweeps = 0;
    bool converged = false;  // false means Unconverged: best measurement found is still returned
};

inline constexpr int kDefaultMaxSweeps = 500;

/// Pairwise-rotation optimization of a minimum-error measurement. Each step
/// solves the binary problem of one pair (i, j) on span{w_i, w_j} exactly, so
/// the average error never increases. Pairs are visited lexicographically.
BayesResult bayes_cost_reduction(const Matrix& states, std::span<const double> priors,
                                 const Measurement& init, double tol = kOptimalityTol,
                                 int max_sweeps = kDefaultMaxSweeps);

BayesResult bayes_cost_reduction(const StateEmbedding& states, std::span<const double> priors,
                                 const Measurement& init, double tol = kOptimalityTol,
                                 int max_sweeps = kDefaultMaxSweeps);

inline constexpr Index kMaxProductOutcomes = Index{1} << 20;

/// n-fold tensor power of a measurement.
Measurement product_pom(const Measurement& base, int n);

/// max |<mu_i|mu_j> - delta_ij| for the square-root vectors of `g`, computed as
/// sqrt(G)^-1 G sqrt(G)^-1 without assuming the result.
double verify_sqm_orthonormal(const GramMatrix& g);

}  // namespace qcap
