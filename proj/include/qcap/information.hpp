#pragma once

// Mutual information of classical channels and the capacity quantities of the
// binary pure-state channel. All logarithms are base 2.

#include <span>

#include "qcap/detection.hpp"
#include "qcap/ensembles.hpp"

namespace qcap {

struct InfoResult {
    double mutual_information_bits = 0.0;
    double per_letter = 0.0;
    Index inputs = 0;
    Index outputs = 0;
};

/// I = sum_i xi_i sum_j P(j|i) log2(P(j|i) / sum_k xi_k P(j|k)), with 0 log 0 = 0.
/// `letters` divides the result into per_letter.
InfoResult mutual_information(std::span<const double> priors, const ChannelMatrix& channel,
                              int letters = 1);

/// h(p) = -p log2 p - (1-p) log2 (1-p).
double binary_entropy(double p);

/// Single-letter Helstrom error (1 - sqrt(1 - kappa^2)) / 2 at equal priors.
double letter_error(double kappa);

/// First-order capacity 1 - h(p), p = letter_error(kappa).
double c1_binary(double kappa);

/// Entropy of the equal mixture of |+> and |->: h((1 + kappa) / 2).
double holevo_binary(double kappa);

/// Von Neumann entropy of sum_i xi_i |s_i><s_i| at the ensemble's own priors.
double holevo_general(const LetterEnsemble& ensemble);

struct ThresholdPoint {
    double info_bits;
    double error;
};

/// n independent letters, each decoded optimally: (n C1, 1 - (1 - p)^n).
ThresholdPoint threshold_quantities(double kappa, int n);

struct CapacityPoint {
    double kappa = 0.0;
    double c1 = 0.0;
    double holevo = 0.0;
    double in_per_letter = 0.0;
    double gain = 0.0;  // in_per_letter - c1
};

CapacityPoint make_capacity_point(double kappa, double in_per_letter);

/// Square-root-measurement information of `code`, computed from its weighted Gram
/// matrix, per letter and relative to C1.
CapacityPoint superadditivity_gain(const Code& code, double kappa);

/// Distance from a product channel. The square-root measurement of the codewords
/// is completed to a basis of all 2^n sequences (each completing vector is labelled
/// by its own sequence); the resulting 2^n x 2^n channel is compared with the
/// product of its single-letter marginals, each marginal averaging uniformly over
/// the other letters. Returns max |P(y|x) - prod_k P_k(y_k|x_k)|.
double memory_effect_residual(const Code& code, double kappa);

}  // namespace qcap
