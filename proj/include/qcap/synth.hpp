#pragma once

// Decoder synthesis: a unitary U on the 2^n product space that turns the
// optimal collective measurement into a measurement of each letter separately
// in the {|a>, |b>} frame, and its factorization into plane rotations.

#include <iosfwd>
#include <vector>

#include "qcap/detection.hpp"
#include "qcap/ensembles.hpp"

namespace qcap {

inline constexpr int kMaxSynthBits = 12;

/// Completes `basis` (orthonormal columns) to an orthonormal basis of the whole
/// space by Gram-Schmidt over the columns of `candidates`, in order, with one
/// re-orthogonalization pass. Throws LinearDependence when a candidate's residual
/// norm drops below 1e-8, or when the count does not fill the space.
Matrix schmidt_extend(const Matrix& basis, const Matrix& candidates);

struct LetterFrame {
    Vector a;  // along |+> + |->
    Vector b;  // along |+> - |->
};

LetterFrame letter_frame(double kappa);

/// Coordinates of |A_label> (a tensor product of |a>, |b>, bit 0 = a) in the
/// embedding frame.
Vector frame_state(int n, Word label, const LetterFrame& frame);

struct BasisExpansion {
    Matrix b;  // B_ij = <w_j|S_i>, sequences in row order S_1..S_M then non-codewords
    Matrix c;  // C_ij = <A_j|S_i>, labels in column order: assigned labels, then the rest
};

struct SynthesizedUnitary {
    int n = 0;
    Matrix u;                          // coordinates in the product basis |A_0>..|A_{2^n - 1}>
    std::vector<Word> target_outcomes;  // label assigned to codeword m
    BasisExpansion expansion;
};

/// Identity assignment: codeword m goes to label m.
std::vector<Word> default_assignment(const Code& code);

/// Builds U with U|w_m> = |A_{label m}>. The measurement must be in the
/// embedding frame and hold one vector per codeword; it is completed with
/// schmidt_extend over the non-codeword sequences.
SynthesizedUnitary synthesize_unitary(const Code& code, double kappa, const Measurement& meas,
                                      const std::vector<Word>& assignment);

SynthesizedUnitary synthesize_unitary(const Code& code, double kappa, const Measurement& meas);

/// 1 - sum_m zeta_m <A_{label m}|U|S_m>^2.
double adaptor_error_probability(const SynthesizedUnitary& su, const Code& code, double kappa);

/// Per codeword, the squared weight of U|S_m> on the assigned labels.
std::vector<double> assigned_label_mass(const SynthesizedUnitary& su, const Code& code, double kappa);

/// T[j, i](gamma): identity except T_ii = T_jj = cos, T_ij = -sin, T_ji = sin (0-based j > i).
struct Rotation {
    Index j = 0;
    Index i = 0;
    double gamma = 0.0;
};

struct RotationSchedule {
    Index dim = 0;
    std::vector<Rotation> rotations;  // U = T_1 T_2 ... T_K D
    bool reflect_last = false;        // D = diag(1, ..., 1, -1) when set, else I
};

inline constexpr double kOrthogonalityTol = 1e-8;

Matrix givens(Index dim, const Rotation& r);

/// Column-by-column elimination of the sub-diagonal of U.
RotationSchedule reck_decompose(const Matrix& u);

Matrix reconstruct(const RotationSchedule& schedule);

/// One "j,i,gamma" line per rotation with 1-based indices; a trailing reflection
/// is written as "N,N,3.14159..." (a phase of pi on axis N).
void write_schedule_csv(std::ostream& out, const RotationSchedule& schedule);

/// Inverse of write_schedule_csv; needs the dimension, which the CSV does not carry.
RotationSchedule read_schedule_csv(std::istream& in, Index dim);

/// "rows cols" header, then the rows.
void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);

}  // namespace qcap
