#include "qcap/ensembles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "qcap/error.hpp"

namespace qcap {

void require_kappa(double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw InvalidInput("kappa must lie in [0, 1), got " + std::to_string(kappa));
    }
}

void require_probability_vector(std::span<const double> priors, const char* what) {
    if (priors.empty()) {
        throw InvalidInput(std::string(what) + ": empty probability vector");
    }
    double sum = 0.0;
    for (double p : priors) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidInput(std::string(what) + ": probabilities must be finite and non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPriorSumTol) {
        throw InvalidInput(std::string(what) + ": probabilities sum to " + std::to_string(sum));
    }
}

int hamming_distance(Word a, Word b) noexcept { return std::popcount(a ^ b); }

int hamming_weight(Word a) noexcept { return std::popcount(a); }

LetterEnsemble::LetterEnsemble(SymMatrix overlaps, std::vector<double> priors)
    : overlaps_(std::move(overlaps)), priors_(std::move(priors)) {
    if (static_cast<std::size_t>(overlaps_.dim()) != priors_.size()) {
        throw InvalidInput("LetterEnsemble: overlap matrix and priors disagree in size");
    }
    for (Index i = 0; i < overlaps_.dim(); ++i) {
        if (overlaps_(i, i) != 1.0) {
            throw InvalidInput("LetterEnsemble: overlap diagonal must be exactly 1");
        }
    }
    require_probability_vector(priors_, "LetterEnsemble priors");
    if (eig_sym(overlaps_).values.minCoeff() < -kDefaultClampTol) {
        throw InvalidInput("LetterEnsemble: overlap matrix is not positive semidefinite");
    }
}

LetterEnsemble LetterEnsemble::binary(double kappa, double xi1) {
    require_kappa(kappa);
    Matrix o(2, 2);
    o << 1.0, kappa, kappa, 1.0;
    return LetterEnsemble(SymMatrix(o), {xi1, 1.0 - xi1});
}

Code::Code(int n, std::vector<Word> words, std::vector<double> priors)
    : n_(n), words_(std::move(words)), priors_(std::move(priors)) {
    if (n_ < 1 || n_ > kMaxBlockLength) {
        throw InvalidInput("Code: block length must be in [1, " + std::to_string(kMaxBlockLength) +
                           "], got " + std::to_string(n_));
    }
    if (words_.empty()) {
        throw InvalidInput("Code: no codewords");
    }
    if (words_.size() != priors_.size()) {
        throw InvalidInput("Code: " + std::to_string(words_.size()) + " codewords but " +
                           std::to_string(priors_.size()) + " priors");
    }
    const Word limit = Word{1} << n_;
    std::unordered_set<Word> seen;
    for (Word w : words_) {
        if (w >= limit) {
            throw InvalidInput("Code: codeword does not fit in " + std::to_string(n_) + " bits");
        }
        if (!seen.insert(w).second) {
            throw InvalidInput("Code: duplicate codeword " + format_word(w, n_));
        }
    }
    require_probability_vector(priors_, "Code priors");
}

Code Code::uniform(int n, std::vector<Word> words) {
    const std::size_t m = words.size();
    std::vector<double> priors(m, m == 0 ? 0.0 : 1.0 / static_cast<double>(m));
    return Code(n, std::move(words), std::move(priors));
}

std::string Code::word_string(std::size_t i) const { return format_word(word(i), n_); }

Word parse_word(std::string_view bits, int n) {
    if (static_cast<int>(bits.size()) != n) {
        throw InvalidInput("codeword '" + std::string(bits) + "' does not have length " +
                           std::to_string(n));
    }
    Word w = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidInput("codeword '" + std::string(bits) + "' contains a non-binary character");
        }
        w = (w << 1) | static_cast<Word>(c - '0');
    }
    return w;
}

std::string format_word(Word w, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        if ((w >> (n - 1 - k)) & 1U) s[static_cast<std::size_t>(k)] = '1';
    }
    return s;
}

Code read_code(std::istream& in) {
    long long n = 0;
    long long m = 0;
    if (!(in >> n >> m)) {
        throw InvalidInput("code file: expected header 'n M'");
    }
    if (n < 1 || n > kMaxBlockLength || m < 1) {
        throw InvalidInput("code file: bad header n=" + std::to_string(n) + " M=" + std::to_string(m));
    }
    if (n < 63 && m > (1LL << n)) {
        throw InvalidInput("code file: M exceeds 2^n");
    }
    std::vector<Word> words;
    words.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        std::string bits;
        if (!(in >> bits)) {
            throw InvalidInput("code file: expected " + std::to_string(m) + " codewords");
        }
        words.push_back(parse_word(bits, static_cast<int>(n)));
    }
    std::vector<double> priors;
    priors.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        double p = 0.0;
        if (!(in >> p)) {
            throw InvalidInput("code file: expected " + std::to_string(m) + " priors");
        }
        priors.push_back(p);
    }
    return Code(static_cast<int>(n), std::move(words), std::move(priors));
}

void write_code(std::ostream& out, const Code& code) {
    out << code.n() << ' ' << code.size() << '\n';
    for (std::size_t i = 0; i < code.size(); ++i) {
        out << code.word_string(i) << '\n';
    }
    const auto old_precision = out.precision(17);
    for (double p : code.priors()) {
        out << p << '\n';
    }
    out.precision(old_precision);
}

Code full_product_code(int n, std::span<const double> letter_priors) {
    if (letter_priors.size() != 2) {
        throw InvalidInput("full_product_code: need exactly two letter priors");
    }
    require_probability_vector(letter_priors, "full_product_code letter priors");
    if (n < 1 || n > kMaxEmbeddingBits) {
        throw ResourceLimit("full_product_code: n must be in [1, " +
                            std::to_string(kMaxEmbeddingBits) + "]");
    }
    const Word count = Word{1} << n;
    std::vector<Word> words(count);
    std::iota(words.begin(), words.end(), Word{0});
    std::vector<double> priors(count);
    for (Word w = 0; w < count; ++w) {
        double p = 1.0;
        for (int k = 0; k < n; ++k) {
            p *= letter_priors[(w >> k) & 1U];
        }
        priors[w] = p;
    }
    // Renormalize away the rounding of the products.
    const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
    for (double& p : priors) p /= total;
    return Code(n, std::move(words), std::move(priors));
}

Code build_nn12_code(int n) {
    if (n < 3) {
        throw InvalidInput("build_nn12_code: n must be at least 3, got " + std::to_string(n));
    }
    if (n > kMaxEmbeddingBits + 1) {
        throw ResourceLimit("build_nn12_code: n too large for an explicit codeword list");
    }
    // gamma: +++, +--, -+-, --+ ; lambda: their complements in the same row order.
    std::vector<Word> gamma{0b000, 0b011, 0b101, 0b110};
    std::vector<Word> lambda{0b111, 0b100, 0b010, 0b001};
    for (int m = 3; m < n; ++m) {
        const Word lead = Word{1} << m;  // '-' prepended as the new first letter
        std::vector<Word> next_gamma;
        std::vector<Word> next_lambda;
        next_gamma.reserve(2 * gamma.size());
        next_lambda.reserve(2 * gamma.size());
        for (Word w : gamma) next_gamma.push_back(w);
        for (Word w : lambda) next_gamma.push_back(lead | w);
        // lambda(m+1) = [- (x) gamma(m) ; + (x) lambda(m)], i.e. gamma(m+1) with the first letter
        // flipped, which is what keeps the Gram blocks Lambda = [[Gamma, Lambda], [Lambda, Gamma]].
        for (Word w : gamma) next_lambda.push_back(lead | w);
        for (Word w : lambda) next_lambda.push_back(w);
        gamma = std::move(next_gamma);
        lambda = std::move(next_lambda);
    }
    return Code::uniform(n, std::move(gamma));
}

Code build_simplex_code(int r) {
    if (r < 2) {
        throw InvalidInput("build_simplex_code: r must be at least 2, got " + std::to_string(r));
    }
    if (r > 6) {
        throw ResourceLimit("build_simplex_code: r > 6 gives block length beyond " +
                            std::to_string(kMaxBlockLength));
    }
    const int n = (1 << r) - 1;
    const Word messages = Word{1} << r;
    std::vector<Word> words;
    words.reserve(messages);
    for (Word msg = 0; msg < messages; ++msg) {
        Word w = 0;
        for (int col = 1; col <= n; ++col) {
            const Word bit = static_cast<Word>(std::popcount(msg & static_cast<Word>(col)) & 1);
            w = (w << 1) | bit;
        }
        words.push_back(w);
    }
    return Code::uniform(n, std::move(words));
}

LetterPair embed_binary_letters(double kappa) {
    require_kappa(kappa);
    const double theta = 0.5 * std::acos(kappa);
    Vector plus(2);
    Vector minus(2);
    plus << std::cos(theta), std::sin(theta);
    minus << std::cos(theta), -std::sin(theta);
    return {plus, minus};
}

StateEmbedding sequence_states(int n, std::span<const Word> words, double kappa) {
    if (n < 1 || n > kMaxEmbeddingBits) {
        throw ResourceLimit("explicit embedding needs 1 <= n <= " + std::to_string(kMaxEmbeddingBits) +
                            ", got n=" + std::to_string(n));
    }
    const Index dim = Index{1} << n;
    if (static_cast<double>(dim) * static_cast<double>(words.size()) > double(Index{1} << 28)) {
        throw ResourceLimit("explicit embedding would exceed 2^28 coordinates");
    }
    const LetterPair letters = embed_binary_letters(kappa);
    StateEmbedding out;
    out.dim = dim;
    out.vectors.resize(dim, static_cast<Index>(words.size()));
    for (std::size_t m = 0; m < words.size(); ++m) {
        Vector state = Vector::Ones(1);
        for (int k = 0; k < n; ++k) {
            const bool minus = (words[m] >> (n - 1 - k)) & 1U;
            const Vector& letter = minus ? letters.minus : letters.plus;
            Vector next(state.size() * 2);
            for (Index i = 0; i < state.size(); ++i) {
                next(2 * i) = state(i) * letter(0);
                next(2 * i + 1) = state(i) * letter(1);
            }
            state = std::move(next);
        }
        out.vectors.col(static_cast<Index>(m)) = state;
    }
    return out;
}

StateEmbedding codeword_states(const Code& code, double kappa) {
    return sequence_states(code.n(), code.words(), kappa);
}

GramMatrix gram(const Code& code, double kappa, bool weighted) {
    require_kappa(kappa);
    const auto m = static_cast<Index>(code.size());
    // Powers of kappa by distance, so equal distances give bit-identical entries.
    std::vector<double> power(static_cast<std::size_t>(code.n()) + 1, 1.0);
    for (std::size_t d = 1; d < power.size(); ++d) power[d] = power[d - 1] * kappa;

    Matrix g(m, m);
    const auto& words = code.words();
    const auto& priors = code.priors();
    for (Index i = 0; i < m; ++i) {
        for (Index j = i; j < m; ++j) {
            double v = power[static_cast<std::size_t>(hamming_distance(words[i], words[j]))];
            if (weighted) v *= std::sqrt(priors[i]) * std::sqrt(priors[j]);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return {weighted, SymMatrix(std::move(g))};
}

}  // namespace qcap
