#pragma once

// Letter ensembles, binary block codes, explicit tensor embeddings and Gram matrices.
//
// Bit convention: bit value 0 is the letter |+>, 1 is |->. Codewords are stored
// as integers whose most significant of the n used bits is the first letter, so
// the integer value of a word reads like its bit string ("011" == 3).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/linalg.hpp"

namespace qcap {

using Word = std::uint64_t;

inline constexpr double kPriorSumTol = 1e-12;

/// Throws InvalidInput unless 0 <= kappa < 1.
void require_kappa(double kappa);

/// Throws InvalidInput unless `priors` is non-empty, non-negative and sums to 1 within kPriorSumTol.
void require_probability_vector(std::span<const double> priors, const char* what);

int hamming_distance(Word a, Word b) noexcept;
int hamming_weight(Word a) noexcept;

/// Pure letter states given by their pairwise overlaps, plus priors.
class LetterEnsemble {
public:
    LetterEnsemble(SymMatrix overlaps, std::vector<double> priors);

    /// Two letters with overlap kappa and priors (xi1, 1 - xi1).
    static LetterEnsemble binary(double kappa, double xi1 = 0.5);

    std::size_t size() const noexcept { return priors_.size(); }
    const SymMatrix& overlaps() const noexcept { return overlaps_; }
    const std::vector<double>& priors() const noexcept { return priors_; }

private:
    SymMatrix overlaps_;
    std::vector<double> priors_;
};

class Code {
public:
    Code(int n, std::vector<Word> words, std::vector<double> priors);

    /// Equal priors 1/M.
    static Code uniform(int n, std::vector<Word> words);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<Word>& words() const noexcept { return words_; }
    const std::vector<double>& priors() const noexcept { return priors_; }
    Word word(std::size_t i) const { return words_.at(i); }
    std::string word_string(std::size_t i) const;

private:
    int n_;
    std::vector<Word> words_;
    std::vector<double> priors_;
};

inline constexpr int kMaxBlockLength = 62;

/// Parses a string of '0'/'1' characters of length n.
Word parse_word(std::string_view bits, int n);
std::string format_word(Word w, int n);

/// Text format: "n M", then M bit strings, then M priors (all whitespace separated).
Code read_code(std::istream& in);
void write_code(std::ostream& out, const Code& code);

/// Every sequence of length n, in index order, with product priors built from
/// the single-letter priors (letter_priors[0] for '+', [1] for '-').
Code full_product_code(int n, std::span<const double> letter_priors);

/// [[n, n-1, 2]] code: 2^(n-1) even-weight words generated recursively from
/// {+++, +--, -+-, --+} with equal priors.
Code build_nn12_code(int n);

/// Simplex code [[2^r - 1, r, 2^(r-1)]] with equal priors; codeword m is the
/// message m times the generator whose columns are all nonzero r-bit vectors.
Code build_simplex_code(int r);

struct LetterPair {
    Vector plus;
    Vector minus;
};

/// (cos t, sin t) and (cos t, -sin t) with cos 2t = kappa.
LetterPair embed_binary_letters(double kappa);

/// Explicit coordinates of codeword states in the 2^n-dimensional product space.
struct StateEmbedding {
    Index dim = 0;
    Matrix vectors;  // dim x M, column m is |S_m>

    Index size() const noexcept { return vectors.cols(); }
};

inline constexpr int kMaxEmbeddingBits = 20;

StateEmbedding codeword_states(const Code& code, double kappa);

/// Same construction for an arbitrary list of words (used for non-codeword sequences).
StateEmbedding sequence_states(int n, std::span<const Word> words, double kappa);

struct GramMatrix {
    bool weighted = false;
    SymMatrix matrix;
};

/// Entry (i,j) = kappa^hamming(c_i, c_j), times sqrt(zeta_i zeta_j) when weighted.
GramMatrix gram(const Code& code, double kappa, bool weighted);

}  // namespace qcap
