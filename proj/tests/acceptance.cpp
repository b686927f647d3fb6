// One line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qcap/detection.hpp"
#include "qcap/fastcode.hpp"
#include "qcap/information.hpp"
#include "qcap/synth.hpp"

using namespace qcap;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
    return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Matrix haar_orthogonal(std::mt19937& rng, Index n) {
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    // Sign fix so the distribution is Haar.
    const Matrix r = qr.matrixQR();
    for (Index k = 0; k < n; ++k)
        if (r(k, k) < 0) q.col(k) *= -1.0;
    return q;
}

// Explicit tensor embedding, Gram, dense eigensolver, square root, channel.
struct BruteForce {
    double info;
    double error;
};

BruteForce brute_force_nn12(int n, double kappa) {
    const Code c = build_nn12_code(n);
    const StateEmbedding s = codeword_states(c, kappa);
    const Matrix g = s.vectors.transpose() * s.vectors;
    const Matrix root = sqrt_psd(SymMatrix::symmetrized(g)).matrix();
    const ChannelMatrix channel(root.cwiseAbs2());
    double correct = 0.0;
    for (Index i = 0; i < root.rows(); ++i) correct += c.priors()[static_cast<std::size_t>(i)] * root(i, i) * root(i, i);
    return {mutual_information(c.priors(), channel).mutual_information_bits, 1.0 - correct};
}

Outcome ac1() {
    double worst = 0.0;
    double n9_seconds = 0.0;
    for (int n = 3; n <= 9; ++n) {
        for (int step = 1; step <= 9; ++step) {
            const double k = step / 10.0;
            const auto t0 = std::chrono::steady_clock::now();
            const BruteForce b = brute_force_nn12(n, k);
            if (n == 9) n9_seconds = std::max(n9_seconds, seconds_since(t0));
            worst = std::max(worst, std::abs(b.info - nn12_mutual_information(n, k)));
            worst = std::max(worst, std::abs(b.error - nn12_error_probability(n, k)));
        }
    }
    return {worst <= 1e-9 && n9_seconds < 60.0,
            fmt("max deviation %.3g, slowest n=9 brute force %.3g s", worst, n9_seconds)};
}

Outcome ac2() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    for (double k : default_grid()) {
        if (nn12_gain(2, k) > 0.0) ok = false, bad += fmt(" n=2 positive at %.2f;", k);
    }
    for (int n = 3; n <= 13; ++n) {
        int changes = 0;
        double prev = nn12_gain(n, 0.01);
        for (double k : default_grid()) {
            const double g = nn12_gain(n, k);
            if ((g > 0.0) != (prev > 0.0)) ++changes;
            prev = g;
        }
        if (!(nn12_gain(n, 0.1) < 0.0) || !(nn12_gain(n, 0.95) > 0.0) || changes != 1) {
            ok = false;
            bad += fmt(" n=%g: %g sign changes;", n, changes);
        }
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 10.0;
    return {ok, fmt("full sweep %.3g s", secs) + bad};
}

Outcome ac3() {
    bool decreasing = true;
    double prev = 1.0;
    double worst = 0.0;
    for (int n = 3; n <= 13; ++n) {
        const double ks = find_kappa_star(n);
        const double guide = std::pow(2.0 / n, 2.0 / 3.0);
        worst = std::max(worst, std::abs(ks - guide));
        decreasing = decreasing && ks < prev;
        prev = ks;
    }
    return {decreasing && worst <= 0.1,
            fmt("strictly decreasing=%g, max |k* - guide| = %.4f", decreasing ? 1.0 : 0.0, worst)};
}

Outcome ac4() {
    double code_gap = 0.0;
    double holevo_gap = 0.0;
    for (double k : default_grid()) {
        const double c1 = c1_binary(k);
        code_gap = std::max(code_gap, nn12_mutual_information(9, k) / 9 - c1);
        holevo_gap = std::max(holevo_gap, holevo_binary(k) - c1);
    }
    return {code_gap < 0.1 * holevo_gap,
            fmt("max(I9/9 - C1) = %.5f, max(C - C1) = %.5f, ratio %.4f", code_gap, holevo_gap, code_gap / holevo_gap)};
}

Outcome ac5() {
    double crossing = -1.0;
    for (double k : default_grid()) {
        if (simplex_profile(3, k).info_bits / 7 > nn12_mutual_information(7, k) / 7) {
            crossing = k;
            break;
        }
    }
    return {crossing >= 0.80 && crossing <= 0.84, fmt("first grid point with simplex ahead: %.2f", crossing)};
}

Outcome ac6() {
    int violations = 0;
    for (double k : default_grid()) {
        const double p = letter_error(k);
        double prev = -1.0;
        for (int n : {3, 5, 7, 9, 11, 13}) {
            const double e = nn12_error_probability(n, k);
            if (e > threshold_quantities(k, n).error) ++violations;
            if (k >= 0.8 && e < p) ++violations;
            if (!(e > prev)) ++violations;
            prev = e;
        }
    }
    return {violations == 0, fmt("%g ordering violations", violations)};
}

Outcome ac7() {
    double worst_residual = 0.0;
    double min_eig = 1.0;
    bool ok = true;
    std::vector<Code> codes;
    for (int n = 3; n <= 9; ++n) codes.push_back(build_nn12_code(n));
    codes.push_back(build_simplex_code(2));
    codes.push_back(build_simplex_code(3));
    for (const Code& c : codes) {
        for (double k : {0.3, 0.6, 0.9}) {
            const GramMatrix g = gram(c, k, true);
            const OptimalityReport r = check_optimality(square_root_measurement(g).measurement, g, c.priors(), kOptimalityTol);
            worst_residual = std::max(worst_residual, r.cond_i_residual);
            min_eig = std::min(min_eig, r.cond_ii_min_eig);
            ok = ok && r.is_optimal && r.cond_i_residual <= 1e-10 && r.cond_ii_min_eig > 0.0;
        }
    }
    return {ok, fmt("max residual %.3g, min eigenvalue of Upsilon' %.3g", worst_residual, min_eig)};
}

Outcome ac8() {
    bool ok = true;
    double worst = 0.0;
    for (int n : {2, 3}) {
        for (double k : {0.3, 0.6, 0.9}) {
            for (double xi1 : {0.5, 0.7}) {
                const std::vector<double> letters{xi1, 1.0 - xi1};
                const Code c = full_product_code(n, letters);
                const HelstromResult h = helstrom_binary(k, xi1);
                const Measurement pom = product_pom(h.measurement, n);
                const OptimalityReport r = check_optimality(pom, codeword_states(c, k), c.priors(), kOptimalityTol);
                const double expected = 1.0 - std::pow(1.0 - h.error, n);
                worst = std::max(worst, std::abs(r.error_probability - expected));
                ok = ok && r.is_optimal;
            }
        }
    }
    return {ok && worst <= 1e-12, fmt("conditions hold=%g, max error deviation %.3g", ok ? 1.0 : 0.0, worst)};
}

Outcome ac9() {
    const double k1 = 0.3;
    const double k2 = 0.7;
    const LetterPair a = embed_binary_letters(k1);
    const LetterPair b = embed_binary_letters(k2);
    Matrix states(4, 4);
    states.col(0) = kron(a.plus, b.plus);
    states.col(1) = kron(a.plus, b.minus);
    states.col(2) = kron(a.minus, b.plus);
    states.col(3) = kron(a.minus, b.minus);
    const std::vector<double> xi(4, 0.25);

    const Matrix product = kron(helstrom_binary(k1, 0.5).measurement.vectors(),
                                helstrom_binary(k2, 0.5).measurement.vectors());
    const Measurement pom(product, MeasurementKind::product, Frame::embedding);
    const double achieved = mutual_information(xi, channel_matrix(pom, states)).mutual_information_bits;
    const double target = c1_binary(k1) + c1_binary(k2);

    std::mt19937 rng(20240601);
    double excess = -1.0;
    for (int t = 0; t < 10000; ++t) {
        const Measurement m(haar_orthogonal(rng, 4), MeasurementKind::optimized, Frame::embedding);
        excess = std::max(excess, mutual_information(xi, channel_matrix(m, states)).mutual_information_bits - target);
    }
    const bool ok = std::abs(achieved - target) <= 1e-9 && excess <= 1e-9;
    return {ok, fmt("|I_product - (C1 + C1)| = %.3g, max random excess %.3g", std::abs(achieved - target), excess)};
}

Outcome ac10() {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    int monotone_fail = 0;
    double worst_residual = 0.0;
    double worst_binary = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Index m = 2 + t % 3;
        StateEmbedding s{m, Matrix(m, m)};
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j) s.vectors(i, j) = gauss(rng);
        for (Index j = 0; j < m; ++j) s.vectors.col(j).normalize();
        std::vector<double> xi(static_cast<std::size_t>(m));
        double total = 0.0;
        for (double& x : xi) total += (x = uni(rng));
        for (double& x : xi) x /= total;

        const BayesResult r = bayes_cost_reduction(s, xi, square_root_measurement(s, xi));
        for (std::size_t k = 1; k < r.error_history.size(); ++k)
            if (r.error_history[k] > r.error_history[k - 1] + 1e-15) ++monotone_fail;
        worst_residual = std::max(worst_residual, r.report.cond_i_residual);
        if (m == 2) {
            const double overlap = s.vectors.col(0).dot(s.vectors.col(1));
            worst_binary = std::max(worst_binary, std::abs(r.report.error_probability - helstrom_error(overlap, xi[0])));
        }
    }
    const bool ok = monotone_fail == 0 && worst_residual <= 1e-8 && worst_binary <= 1e-9;
    return {ok, fmt("non-monotone steps %g, max residual %.3g, max binary deviation %.3g", monotone_fail,
                    worst_residual, worst_binary)};
}

Outcome ac11() {
    double orth = 0.0;
    double err = 0.0;
    double recon = 0.0;
    for (int n : {3, 7}) {
        const Code c = build_nn12_code(n);
        for (double k : {0.3, 0.6, 0.9}) {
            const StateEmbedding s = codeword_states(c, k);
            const Measurement srm = square_root_measurement(s, c.priors());
            const double certified = check_optimality(srm, s, c.priors(), kOptimalityTol).error_probability;
            const SynthesizedUnitary su = synthesize_unitary(c, k, srm);
            const Index dim = su.u.rows();
            orth = std::max(orth, max_abs(su.u.transpose() * su.u - Matrix::Identity(dim, dim)));
            err = std::max(err, std::abs(adaptor_error_probability(su, c, k) - certified));
            recon = std::max(recon, max_abs(reconstruct(reck_decompose(su.u)) - su.u));
        }
    }
    const bool ok = orth <= 1e-10 && err <= 1e-10 && recon <= 1e-8;
    return {ok, fmt("orthogonality %.3g, error mismatch %.3g, reconstruction %.3g", orth, err, recon)};
}

Outcome ac12() {
    struct Spot {
        const char* name;
        double library;
        double independent;
        double stated;
    };
    const Spot spots[] = {
        {"c1_binary(0.5)", c1_binary(0.5), oracle::c1(0.5), 0.645423},
        {"holevo_binary(0.5)", holevo_binary(0.5), oracle::holevo(0.5), 0.811278},
        {"nn12_mutual_information(3,0.5)", nn12_mutual_information(3, 0.5), oracle::info_322(0.5), 1.699661},
        {"nn12_error_probability(3,0.5)", nn12_error_probability(3, 0.5), oracle::error_322(0.5), 0.039134},
    };
    bool ok = true;
    std::string detail;
    for (const Spot& s : spots) {
        const bool hit = std::abs(s.library - s.stated) <= 1e-5 && std::abs(s.independent - s.stated) <= 1e-5 &&
                         std::abs(s.library - s.independent) <= 1e-10;
        ok = ok && hit;
        detail += std::string(" ") + s.name + fmt("=%.7f (oracle %.7f)", s.library, s.independent) + ";";
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"AC1 fast path matches brute force", ac1},
        {"AC2 gain sign structure", ac2},
        {"AC3 kappa* decreasing near guide", ac3},
        {"AC4 code gain below 10% of Holevo gap", ac4},
        {"AC5 simplex vs [[7,6,2]] crossing", ac5},
        {"AC6 error orderings", ac6},
        {"AC7 square-root measurement certified", ac7},
        {"AC8 product Helstrom measurement certified", ac8},
        {"AC9 product of single-letter optima", ac9},
        {"AC10 Bayes cost reduction", ac10},
        {"AC11 decoder synthesis", ac11},
        {"AC12 closed-form spot values", ac12},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o{false, ""};
        try {
            o = run();
        } catch (const std::exception& e) {
            o.detail = std::string("threw: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
