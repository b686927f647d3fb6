#include "qcap/fastcode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcap/error.hpp"
#include "qcap/information.hpp"

namespace qcap {

namespace {

constexpr int kMaxFastN = 40;

void require_n(int n, int lowest, const char* what) {
    if (n < lowest) {
        throw InvalidInput(std::string(what) + ": n must be at least " + std::to_string(lowest) +
                           ", got " + std::to_string(n));
    }
    if (n > kMaxFastN) {
        throw ResourceLimit(std::string(what) + ": n must be at most " + std::to_string(kMaxFastN));
    }
}

void require_closed_kappa(double kappa, const char* what) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        throw InvalidInput(std::string(what) + ": kappa must lie in [0, 1]");
    }
    if (kappa == 1.0) {
        throw LinearDependence(std::string(what) + ": kappa = 1 makes every codeword state identical");
    }
}

// Square root of an eigenvalue that may come out a few ulps below zero.
double root_of_eigenvalue(double value, double scale) {
    if (value < 0.0) {
        if (value < -1e-12 * std::max(1.0, scale)) {
            throw NotPsd("fastcode: negative Gram eigenvalue " + std::to_string(value));
        }
        return 0.0;
    }
    return std::sqrt(value);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

CoefficientTable nn12_coefficients(int n, double kappa) {
    require_n(n, 4, "nn12_coefficients");
    require_closed_kappa(kappa, "nn12_coefficients");
    const double k2 = kappa * kappa;
    CoefficientTable t;
    t.n = 4;
    t.a = {1.0, 1.0};
    t.b = {k2, -k2};
    t.c = {1.0, 1.0};
    t.d = {1.0, -1.0};
    while (t.n < n) {
        const std::size_t half = t.a.size();
        CoefficientTable next;
        next.n = t.n + 1;
        next.a.resize(2 * half);
        next.b.resize(2 * half);
        next.c.resize(2 * half);
        next.d.resize(2 * half);
        for (std::size_t k = 0; k < half; ++k) {
            next.a[k] = t.a[k] + k2 * t.c[k];
            next.a[k + half] = t.a[k] - k2 * t.c[k];
            next.b[k] = t.b[k] + k2 * t.d[k];
            next.b[k + half] = t.b[k] - k2 * t.d[k];
            next.c[k] = t.a[k] + t.c[k];
            next.c[k + half] = t.a[k] - t.c[k];
            next.d[k] = t.b[k] + t.d[k];
            next.d[k + half] = t.b[k] - t.d[k];
        }
        t = std::move(next);
    }
    return t;
}

SpectralProfile nn12_profile(int n, double kappa) {
    require_n(n, 3, "nn12_profile");
    require_closed_kappa(kappa, "nn12_profile");
    const double k2 = kappa * kappa;

    std::vector<double> a{1.0};
    std::vector<double> b{0.0};
    if (n >= 4) {
        CoefficientTable t = nn12_coefficients(n, kappa);
        a = std::move(t.a);
        b = std::move(t.b);
    }

    SpectralProfile p;
    p.n = n;
    const std::size_t len = a.size();
    p.alpha.resize(len);
    p.beta.resize(len);
    p.mu.resize(len);
    p.nu.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        const double big = (1.0 + 3.0 * k2) * a[k] + (3.0 + k2) * b[k];
        const double small = (1.0 - k2) * (a[k] - b[k]);
        p.alpha[k] = root_of_eigenvalue(big, std::abs(a[k]) + std::abs(b[k]));
        p.beta[k] = root_of_eigenvalue(small, std::abs(a[k]) + std::abs(b[k]));
        p.mu[k] = (p.alpha[k] + 3.0 * p.beta[k]) / 4.0;
        p.nu[k] = (p.alpha[k] - p.beta[k]) / 4.0;
    }

    p.u = p.mu;
    p.v = p.nu;
    walsh_hadamard(p.u);
    walsh_hadamard(p.v);
    const double scale = 1.0 / static_cast<double>(len);
    for (std::size_t k = 0; k < len; ++k) {
        p.u[k] *= scale;
        p.v[k] *= scale;
    }
    return p;
}

Vector nn12_sqrt_gram_row(const SpectralProfile& profile, Index row) {
    const Index size = static_cast<Index>(4 * profile.u.size());
    if (row < 0 || row >= size) {
        throw InvalidInput("nn12_sqrt_gram_row: row out of range");
    }
    Vector out(size);
    const Index block = row / 4;
    const Index within = row % 4;
    for (Index col = 0; col < size; ++col) {
        const auto k = static_cast<std::size_t>(block ^ (col / 4));
        out(col) = (col % 4 == within) ? profile.u[k] : profile.v[k];
    }
    return out;
}

Matrix nn12_sqrt_gram(const SpectralProfile& profile) {
    if (profile.n > 14) {
        throw ResourceLimit("nn12_sqrt_gram: n must be at most 14");
    }
    const Index size = static_cast<Index>(4 * profile.u.size());
    Matrix out(size, size);
    for (Index r = 0; r < size; ++r) out.row(r) = nn12_sqrt_gram_row(profile, r).transpose();
    return out;
}

double nn12_mutual_information(int n, double kappa) {
    const SpectralProfile p = nn12_profile(n, kappa);
    double sum = 0.0;
    for (std::size_t k = 0; k < p.u.size(); ++k) {
        const double u2 = p.u[k] * p.u[k];
        const double v2 = p.v[k] * p.v[k];
        sum += xlog2x(u2) + 3.0 * xlog2x(v2);
    }
    return static_cast<double>(n - 1) + sum;
}

double nn12_error_probability(int n, double kappa) {
    const SpectralProfile p = nn12_profile(n, kappa);
    return 1.0 - p.u[0] * p.u[0];
}

SimplexProfile simplex_profile(int r, double kappa) {
    if (r < 2 || r > 30) {
        throw InvalidInput("simplex_profile: r must lie in [2, 30]");
    }
    require_kappa(kappa);
    const double m = std::ldexp(1.0, r);
    const double off = std::pow(kappa, m / 2.0);
    const double alpha = std::sqrt(1.0 + (m - 1.0) * off);
    const double beta = std::sqrt(1.0 - off);
    SimplexProfile s;
    s.u = (alpha + (m - 1.0) * beta) / m;
    s.v = (alpha - beta) / m;
    s.info_bits = static_cast<double>(r) + xlog2x(s.u * s.u) + (m - 1.0) * xlog2x(s.v * s.v);
    s.error = 1.0 - s.u * s.u;
    return s;
}

double repetition_mutual_information(double kappa) {
    require_kappa(kappa);
    return 1.0 - binary_entropy(helstrom_error(kappa * kappa, 0.5));
}

double nn12_gain(int n, double kappa) {
    if (n == 2) return repetition_mutual_information(kappa) / 2.0 - c1_binary(kappa);
    return nn12_mutual_information(n, kappa) / n - c1_binary(kappa);
}

double find_kappa_star(int n, double tol) {
    require_n(n, 2, "find_kappa_star");
    if (!(tol > 0.0)) {
        throw InvalidInput("find_kappa_star: tol must be positive");
    }
    constexpr int steps = 1000;
    auto grid = [](int i) { return static_cast<double>(i) / steps; };

    int first_positive = -1;
    for (int i = 1; i < steps; ++i) {
        if (nn12_gain(n, grid(i)) > 0.0) {
            first_positive = i;
            break;
        }
    }
    if (first_positive < 0) {
        throw NoRoot("find_kappa_star: gain is not positive anywhere on (0, 1) for n = " + std::to_string(n));
    }
    // Near kappa = 1 both rates vanish and the gain sinks into rounding noise.
    constexpr double noise = 1e-12;
    for (int i = first_positive + 1; i < steps; ++i) {
        if (!(nn12_gain(n, grid(i)) > -noise)) {
            throw NoRoot("find_kappa_star: gain changes sign more than once for n = " + std::to_string(n));
        }
    }
    if (first_positive == 1) {
        throw NoRoot("find_kappa_star: gain is already positive at the bottom of the grid");
    }

    double lo = grid(first_positive - 1);
    double hi = grid(first_positive);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (nn12_gain(n, mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qcap
