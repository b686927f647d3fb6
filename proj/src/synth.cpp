#include "qcap/synth.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

namespace {

constexpr double kResidualFloor = 1e-8;
constexpr double kSkipTol = 1e-13;

}  // namespace

Matrix schmidt_extend(const Matrix& basis, const Matrix& candidates) {
    const Index dim = basis.rows();
    const Index have = basis.cols();
    if (candidates.rows() != dim && candidates.cols() > 0) {
        throw InvalidInput("schmidt_extend: candidates have the wrong dimension");
    }
    if (have + candidates.cols() != dim) {
        throw LinearDependence("schmidt_extend: " + std::to_string(have) + " + " +
                               std::to_string(candidates.cols()) + " vectors cannot span dimension " +
                               std::to_string(dim));
    }
    if (orthonormality_residual(basis) > kOrthonormalTol) {
        throw InvalidInput("schmidt_extend: starting vectors are not orthonormal");
    }
    Matrix out(dim, dim);
    out.leftCols(have) = basis;
    for (Index k = 0; k < candidates.cols(); ++k) {
        const Index filled = have + k;
        Vector v = candidates.col(k);
        for (int pass = 0; pass < 2; ++pass) {
            v -= out.leftCols(filled) * (out.leftCols(filled).transpose() * v);
            if (pass == 0 && v.norm() < kResidualFloor * candidates.col(k).norm()) {
                throw LinearDependence("schmidt_extend: candidate " + std::to_string(k) +
                                       " is numerically inside the span of the previous vectors");
            }
        }
        out.col(filled) = v / v.norm();
    }
    return out;
}

LetterFrame letter_frame(double kappa) {
    const LetterPair letters = embed_binary_letters(kappa);
    Vector sum = letters.plus + letters.minus;
    Vector diff = letters.plus - letters.minus;
    return {sum / sum.norm(), diff / diff.norm()};
}

Vector frame_state(int n, Word label, const LetterFrame& frame) {
    Vector state = Vector::Ones(1);
    for (int k = 0; k < n; ++k) {
        const bool second = (label >> (n - 1 - k)) & 1U;
        state = kron(state, second ? frame.b : frame.a);
    }
    return state;
}

namespace {

// Column l holds |A_l>.
Matrix frame_basis(int n, const LetterFrame& frame) {
    const Index dim = Index{1} << n;
    Matrix f(dim, dim);
    for (Word l = 0; l < static_cast<Word>(dim); ++l) f.col(static_cast<Index>(l)) = frame_state(n, l, frame);
    return f;
}

}  // namespace

std::vector<Word> default_assignment(const Code& code) {
    std::vector<Word> labels(code.size());
    for (std::size_t m = 0; m < labels.size(); ++m) labels[m] = m;
    return labels;
}

SynthesizedUnitary synthesize_unitary(const Code& code, double kappa, const Measurement& meas,
                                      const std::vector<Word>& assignment) {
    const int n = code.n();
    if (n > kMaxSynthBits) {
        throw ResourceLimit("synthesize_unitary: n must be at most " + std::to_string(kMaxSynthBits));
    }
    const Index dim = Index{1} << n;
    const auto m = static_cast<Index>(code.size());
    if (meas.frame() != Frame::embedding || meas.dim() != dim || meas.size() != m) {
        throw InvalidInput("synthesize_unitary: need one embedding-frame measurement vector per codeword");
    }
    if (static_cast<Index>(assignment.size()) != m) {
        throw InvalidInput("synthesize_unitary: need one outcome label per codeword");
    }
    std::vector<bool> used(static_cast<std::size_t>(dim), false);
    for (Word label : assignment) {
        if (label >= static_cast<Word>(dim)) {
            throw InvalidInput("synthesize_unitary: outcome label out of range");
        }
        if (used[label]) {
            throw InvalidInput("synthesize_unitary: duplicate outcome label " + format_word(label, n));
        }
        used[label] = true;
    }

    std::vector<bool> is_codeword(static_cast<std::size_t>(dim), false);
    for (Word w : code.words()) is_codeword[w] = true;
    std::vector<Word> sequences = code.words();
    for (Word s = 0; s < static_cast<Word>(dim); ++s) {
        if (!is_codeword[s]) sequences.push_back(s);
    }
    const Matrix s = sequence_states(n, sequences, kappa).vectors;
    const Matrix omega = schmidt_extend(meas.vectors(), s.rightCols(dim - m));

    std::vector<Word> labels = assignment;
    for (Word l = 0; l < static_cast<Word>(dim); ++l) {
        if (!used[l]) labels.push_back(l);
    }
    const LetterFrame frame = letter_frame(kappa);
    Matrix a(dim, dim);
    for (Index k = 0; k < dim; ++k) a.col(k) = frame_state(n, labels[static_cast<std::size_t>(k)], frame);

    SynthesizedUnitary out;
    out.n = n;
    out.target_outcomes = assignment;
    out.expansion.b = s.transpose() * omega;
    out.expansion.c = s.transpose() * a;

    const Eigen::FullPivLU<Matrix> lu(out.expansion.b);
    if (!lu.isInvertible()) {
        throw LinearDependence("synthesize_unitary: B is singular");
    }
    // Row i of W expands w_i over the A vectors: w_i = sum_j W_ij A_j.
    const Matrix w = lu.solve(out.expansion.c);
    // U = sum_i |A_i><w_i| = A W A^T in embedding coordinates, then rewritten
    // in the natural {|a>,|b>} product basis.
    const Matrix f = frame_basis(n, frame);
    out.u = f.transpose() * (a * w * a.transpose()) * f;
    return out;
}

SynthesizedUnitary synthesize_unitary(const Code& code, double kappa, const Measurement& meas) {
    return synthesize_unitary(code, kappa, meas, default_assignment(code));
}

namespace {

// <A_label|U|S_m> for every codeword m and every label.
Matrix adapted_amplitudes(const SynthesizedUnitary& su, const Code& code, double kappa) {
    if (code.n() != su.n) {
        throw InvalidInput("adapted_amplitudes: code and unitary disagree on n");
    }
    const LetterFrame frame = letter_frame(kappa);
    const Matrix states = codeword_states(code, kappa).vectors;
    // Coordinates of the states in the frame basis, then apply U there.
    return su.u * (frame_basis(su.n, frame).transpose() * states);
}

}  // namespace

double adaptor_error_probability(const SynthesizedUnitary& su, const Code& code, double kappa) {
    const Matrix amp = adapted_amplitudes(su, code, kappa);
    double correct = 0.0;
    for (std::size_t m = 0; m < code.size(); ++m) {
        const double x = amp(static_cast<Index>(su.target_outcomes.at(m)), static_cast<Index>(m));
        correct += code.priors()[m] * x * x;
    }
    return 1.0 - correct;
}

std::vector<double> assigned_label_mass(const SynthesizedUnitary& su, const Code& code, double kappa) {
    const Matrix amp = adapted_amplitudes(su, code, kappa);
    std::vector<double> mass(code.size(), 0.0);
    for (std::size_t m = 0; m < code.size(); ++m) {
        for (Word label : su.target_outcomes) {
            const double x = amp(static_cast<Index>(label), static_cast<Index>(m));
            mass[m] += x * x;
        }
    }
    return mass;
}

Matrix givens(Index dim, const Rotation& r) {
    if (r.i < 0 || r.j < 0 || r.i >= dim || r.j >= dim || r.i == r.j) {
        throw InvalidInput("givens: bad plane indices");
    }
    Matrix t = Matrix::Identity(dim, dim);
    const double c = std::cos(r.gamma);
    const double s = std::sin(r.gamma);
    t(r.i, r.i) = c;
    t(r.j, r.j) = c;
    t(r.i, r.j) = -s;
    t(r.j, r.i) = s;
    return t;
}

RotationSchedule reck_decompose(const Matrix& u) {
    const Index dim = u.rows();
    if (dim < 1 || u.cols() != dim) {
        throw InvalidInput("reck_decompose: matrix must be square and non-empty");
    }
    if (max_abs(u.transpose() * u - Matrix::Identity(dim, dim)) > kOrthogonalityTol) {
        throw InvalidInput("reck_decompose: matrix is not orthogonal");
    }
    RotationSchedule schedule;
    schedule.dim = dim;
    Matrix m = u;
    for (Index i = 0; i + 1 < dim; ++i) {
        for (Index j = i + 1; j < dim; ++j) {
            const double xi = m(i, i);
            const double xj = m(j, i);
            const bool last = j + 1 == dim;
            if (std::abs(xj) <= kSkipTol && !(last && xi < 0.0)) continue;
            const double gamma = std::atan2(xj, xi);
            const double c = std::cos(gamma);
            const double s = std::sin(gamma);
            // Left-multiply by T^T: only rows i and j change.
            const Eigen::RowVectorXd row_i = m.row(i);
            m.row(i) = c * row_i + s * m.row(j);
            m.row(j) = -s * row_i + c * m.row(j);
            schedule.rotations.push_back({j, i, gamma});
        }
    }
    schedule.reflect_last = m(dim - 1, dim - 1) < 0.0;
    return schedule;
}

Matrix reconstruct(const RotationSchedule& schedule) {
    Matrix r = Matrix::Identity(schedule.dim, schedule.dim);
    for (const Rotation& rot : schedule.rotations) {
        const double c = std::cos(rot.gamma);
        const double s = std::sin(rot.gamma);
        // r * T touches columns i and j only.
        const Vector col_i = r.col(rot.i);
        r.col(rot.i) = c * col_i + s * r.col(rot.j);
        r.col(rot.j) = -s * col_i + c * r.col(rot.j);
    }
    if (schedule.reflect_last) r.col(schedule.dim - 1) *= -1.0;
    return r;
}

void write_schedule_csv(std::ostream& out, const RotationSchedule& schedule) {
    const auto old_precision = out.precision(17);
    for (const Rotation& r : schedule.rotations) {
        out << (r.j + 1) << ',' << (r.i + 1) << ',' << r.gamma << '\n';
    }
    if (schedule.reflect_last) {
        out << schedule.dim << ',' << schedule.dim << ',' << std::numbers::pi << '\n';
    }
    out.precision(old_precision);
}

RotationSchedule read_schedule_csv(std::istream& in, Index dim) {
    RotationSchedule schedule;
    schedule.dim = dim;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        long long j = 0;
        long long i = 0;
        double gamma = 0.0;
        char comma1 = 0;
        char comma2 = 0;
        if (!(fields >> j >> comma1 >> i >> comma2 >> gamma) || comma1 != ',' || comma2 != ',') {
            throw InvalidInput("schedule csv: malformed line '" + line + "'");
        }
        if (j < 1 || i < 1 || j > dim || i > dim) {
            throw InvalidInput("schedule csv: index out of range in '" + line + "'");
        }
        if (j == i) {
            if (j != dim || schedule.reflect_last) {
                throw InvalidInput("schedule csv: a phase row is only allowed once, on the last axis");
            }
            schedule.reflect_last = true;
            continue;
        }
        if (schedule.reflect_last) {
            throw InvalidInput("schedule csv: rotation after the reflection row");
        }
        schedule.rotations.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), gamma});
    }
    return schedule;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    const auto old_precision = out.precision(17);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ' ';
            out << m(r, c);
        }
        out << '\n';
    }
    out.precision(old_precision);
}

Matrix read_matrix(std::istream& in) {
    Index rows = 0;
    Index cols = 0;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
        throw InvalidInput("matrix text: expected header 'rows cols'");
    }
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            if (!(in >> m(r, c))) {
                throw InvalidInput("matrix text: too few entries");
            }
        }
    }
    return m;
}

}  // namespace qcap
