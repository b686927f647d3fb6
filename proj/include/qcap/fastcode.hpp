#pragma once

// Closed forms for the square-root decoding of two code families, evaluated
// without building any 2^n-dimensional object:
//   - the [[n, n-1, 2]] family from build_nn12_code, via Hadamard-diagonalized
//     Gram recursions,
//   - the [[2^r - 1, r, 2^(r-1)]] simplex codes, whose Gram matrix has a single
//     off-diagonal value.

#include <vector>

#include "qcap/linalg.hpp"

namespace qcap {

/// Recursion coefficients of the Gram eigenvalues, length 2^(n-3), n >= 4.
struct CoefficientTable {
    int n = 0;
    std::vector<double> a, b, c, d;
};

CoefficientTable nn12_coefficients(int n, double kappa);

/// sqrt(Gram) of the [[n, n-1, 2]] code is made of 4x4 blocks R_k = u_k I + v_k (J - I),
/// with block (p, q) equal to R_{p xor q}.
struct SpectralProfile {
    int n = 0;
    std::vector<double> alpha, beta;
    std::vector<double> mu, nu;
    std::vector<double> u, v;
};

/// Accepts kappa in [0, 1]; kappa = 1 throws LinearDependence.
SpectralProfile nn12_profile(int n, double kappa);

/// Row `row` of sqrt(Gram), expanded to its 2^(n-1) entries.
Vector nn12_sqrt_gram_row(const SpectralProfile& profile, Index row);

/// Full sqrt(Gram); guarded to n <= 14.
Matrix nn12_sqrt_gram(const SpectralProfile& profile);

/// I_n = (n - 1) + sum_k [u_k^2 log2 u_k^2 + 3 v_k^2 log2 v_k^2].
double nn12_mutual_information(int n, double kappa);

/// 1 - u_1^2.
double nn12_error_probability(int n, double kappa);

struct SimplexProfile {
    double u = 0.0;
    double v = 0.0;
    double info_bits = 0.0;
    double error = 0.0;
};

SimplexProfile simplex_profile(int r, double kappa);

/// Two-codeword repetition code {00, 11}: 1 - h(p2), p2 the Helstrom error at overlap kappa^2.
double repetition_mutual_information(double kappa);

/// I_n / n - C1 for the [[n, n-1, 2]] code; n = 2 means the repetition code.
double nn12_gain(int n, double kappa);

inline constexpr double kKappaStarTol = 1e-6;

/// Root of nn12_gain(n, .) on (0, 1). Scans a grid of step 1/1000 for the
/// sign change, bisects it to `tol`, and checks the gain stays positive on
/// the grid above the root. Throws NoRoot when the gain is never positive.
double find_kappa_star(int n, double tol = kKappaStarTol);

}  // namespace qcap
