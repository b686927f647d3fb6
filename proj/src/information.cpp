#include "qcap/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcap/error.hpp"
#include "qcap/synth.hpp"

namespace qcap {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

InfoResult mutual_information(std::span<const double> priors, const ChannelMatrix& channel,
                              int letters) {
    if (static_cast<Index>(priors.size()) != channel.inputs()) {
        throw InvalidInput("mutual_information: " + std::to_string(priors.size()) + " priors for " +
                           std::to_string(channel.inputs()) + " channel inputs");
    }
    if (letters < 1) {
        throw InvalidInput("mutual_information: letters must be at least 1");
    }
    require_probability_vector(priors, "mutual_information priors");

    const Matrix& p = channel.matrix();
    Vector output(channel.outputs());
    output.setZero();
    for (Index i = 0; i < p.rows(); ++i) output += priors[static_cast<std::size_t>(i)] * p.row(i).transpose();

    double info = 0.0;
    for (Index i = 0; i < p.rows(); ++i) {
        const double xi = priors[static_cast<std::size_t>(i)];
        if (xi == 0.0) continue;
        double row = 0.0;
        for (Index j = 0; j < p.cols(); ++j) {
            const double pij = p(i, j);
            if (pij <= 0.0) continue;
            if (!(output(j) > 0.0)) {
                throw std::logic_error("mutual_information: positive transition into a zero-probability output");
            }
            row += pij * std::log2(pij / output(j));
        }
        info += xi * row;
    }
    info = std::max(info, 0.0);
    return {info, info / letters, channel.inputs(), channel.outputs()};
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput("binary_entropy: p must lie in [0, 1]");
    }
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double letter_error(double kappa) {
    require_kappa(kappa);
    // (1 - sqrt(1 - k^2)) / 2 rewritten to avoid cancellation at small kappa.
    return 0.5 * kappa * kappa / (1.0 + std::sqrt(1.0 - kappa * kappa));
}

double c1_binary(double kappa) { return 1.0 - binary_entropy(letter_error(kappa)); }

double holevo_binary(double kappa) {
    require_kappa(kappa);
    return binary_entropy(0.5 * (1.0 + kappa));
}

double holevo_general(const LetterEnsemble& ensemble) {
    const auto& xi = ensemble.priors();
    const Index m = ensemble.overlaps().dim();
    Matrix w = ensemble.overlaps().matrix();
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < m; ++j) {
            w(i, j) *= std::sqrt(xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(j)]);
        }
    }
    const Vector spectrum = eig_sym(SymMatrix::symmetrized(w)).values;
    if (spectrum.minCoeff() < -kDefaultClampTol) {
        throw InvalidInput("holevo_general: overlap matrix is not positive semidefinite");
    }
    double entropy = 0.0;
    for (Index k = 0; k < spectrum.size(); ++k) entropy -= xlog2x(std::max(spectrum(k), 0.0));
    return std::max(entropy, 0.0);
}

ThresholdPoint threshold_quantities(double kappa, int n) {
    if (n < 1) {
        throw InvalidInput("threshold_quantities: n must be at least 1");
    }
    const double p = letter_error(kappa);
    return {n * c1_binary(kappa), -std::expm1(n * std::log1p(-p))};
}

CapacityPoint make_capacity_point(double kappa, double in_per_letter) {
    CapacityPoint point;
    point.kappa = kappa;
    point.c1 = c1_binary(kappa);
    point.holevo = holevo_binary(kappa);
    point.in_per_letter = in_per_letter;
    point.gain = in_per_letter - point.c1;
    return point;
}

CapacityPoint superadditivity_gain(const Code& code, double kappa) {
    const SquareRootResult srm = square_root_measurement(gram(code, kappa, true));
    const InfoResult info = mutual_information(code.priors(), srm.channel, code.n());
    return make_capacity_point(kappa, info.per_letter);
}

double memory_effect_residual(const Code& code, double kappa) {
    const int n = code.n();
    if (n > kMaxSynthBits) {
        throw ResourceLimit("memory_effect_residual: n must be at most " + std::to_string(kMaxSynthBits));
    }
    const Index dim = Index{1} << n;
    // Zero-prior codewords are treated like any other non-codeword sequence.
    std::vector<Word> sent;
    std::vector<double> sent_priors;
    std::vector<bool> is_sent(static_cast<std::size_t>(dim), false);
    for (std::size_t m = 0; m < code.size(); ++m) {
        if (code.priors()[m] > 0.0) {
            sent.push_back(code.word(m));
            sent_priors.push_back(code.priors()[m]);
            is_sent[code.word(m)] = true;
        }
    }
    std::vector<Word> others;
    for (Word s = 0; s < static_cast<Word>(dim); ++s) {
        if (!is_sent[s]) others.push_back(s);
    }
    const Measurement srm = square_root_measurement(sequence_states(n, sent, kappa), sent_priors);
    const Matrix completed = schmidt_extend(srm.vectors(), sequence_states(n, others, kappa).vectors);

    // Outcome label of each basis vector: codeword measurement vectors keep their
    // own sequence, completing vectors take the sequence they were built from.
    Matrix basis(dim, dim);
    for (std::size_t m = 0; m < sent.size(); ++m) {
        basis.col(static_cast<Index>(sent[m])) = completed.col(static_cast<Index>(m));
    }
    for (std::size_t k = 0; k < others.size(); ++k) {
        basis.col(static_cast<Index>(others[k])) = completed.col(static_cast<Index>(sent.size() + k));
    }

    std::vector<Word> all(static_cast<std::size_t>(dim));
    for (Word s = 0; s < static_cast<Word>(dim); ++s) all[s] = s;
    const Matrix states = sequence_states(n, all, kappa).vectors;
    const Matrix channel = (basis.transpose() * states).transpose().cwiseAbs2();  // row x, column y

    // marginal[k](a, b) = P_k(b | a) for letter position k (0 = first letter).
    std::vector<Eigen::Matrix2d> marginal(static_cast<std::size_t>(n), Eigen::Matrix2d::Zero());
    const double weight = 1.0 / static_cast<double>(dim / 2);
    for (Index x = 0; x < dim; ++x) {
        for (Index y = 0; y < dim; ++y) {
            for (int k = 0; k < n; ++k) {
                const int shift = n - 1 - k;
                marginal[static_cast<std::size_t>(k)]((x >> shift) & 1, (y >> shift) & 1) += weight * channel(x, y);
            }
        }
    }

    double residual = 0.0;
    for (Index x = 0; x < dim; ++x) {
        for (Index y = 0; y < dim; ++y) {
            double product = 1.0;
            for (int k = 0; k < n; ++k) {
                const int shift = n - 1 - k;
                product *= marginal[static_cast<std::size_t>(k)]((x >> shift) & 1, (y >> shift) & 1);
            }
            residual = std::max(residual, std::abs(channel(x, y) - product));
        }
    }
    return residual;
}

}  // namespace qcap
