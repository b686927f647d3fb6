#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "qcap/ensembles.hpp"
#include "qcap/error.hpp"

using namespace qcap;

TEST_CASE("embed_binary_letters") {
    for (double k : {0.0, 0.5, 0.99}) {
        const LetterPair l = embed_binary_letters(k);
        CHECK(l.plus.norm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(l.minus.norm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(l.plus.dot(l.minus) - k) <= 1e-15);
    }
    const LetterPair l = embed_binary_letters(0.0);
    CHECK(l.plus(0) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(l.minus(1) == doctest::Approx(-1 / std::sqrt(2.0)));
    CHECK_THROWS_AS(embed_binary_letters(1.0), InvalidInput);
    CHECK_THROWS_AS(embed_binary_letters(-0.1), InvalidInput);
}

TEST_CASE("Code validation") {
    CHECK_THROWS_AS(Code(2, {0, 0}, {0.5, 0.5}), InvalidInput);
    CHECK_THROWS_AS(Code(2, {0, 4}, {0.5, 0.5}), InvalidInput);
    CHECK_THROWS_AS(Code(2, {0, 1}, {0.5, 0.6}), InvalidInput);
    CHECK_THROWS_AS(Code(2, {0, 1}, {1.0}), InvalidInput);
    CHECK_THROWS_AS(Code(0, {0}, {1.0}), InvalidInput);
    CHECK_THROWS_AS(Code::uniform(2, {}), InvalidInput);
    const Code c = Code::uniform(3, {0b011, 0b100});
    CHECK(c.word_string(0) == "011");
    CHECK(c.priors()[1] == 0.5);
}

TEST_CASE("code text format round trip") {
    const Code c(3, {0b000, 0b011, 0b101}, {0.2, 0.3, 0.5});
    std::stringstream ss;
    write_code(ss, c);
    const Code back = read_code(ss);
    CHECK(back.n() == 3);
    CHECK(back.words() == c.words());
    CHECK(back.priors() == c.priors());

    std::istringstream bad("3 2\n000\n01x\n0.5 0.5\n");
    CHECK_THROWS_AS(read_code(bad), InvalidInput);
    std::istringstream short_priors("2 2\n00\n11\n0.5\n");
    CHECK_THROWS_AS(read_code(short_priors), InvalidInput);
}

TEST_CASE("LetterEnsemble") {
    const LetterEnsemble e = LetterEnsemble::binary(0.4, 0.3);
    CHECK(e.size() == 2);
    CHECK(e.overlaps()(0, 1) == 0.4);
    Matrix bad(2, 2);
    bad << 1, 1.5, 1.5, 1;
    CHECK_THROWS_AS(LetterEnsemble(SymMatrix(bad), {0.5, 0.5}), InvalidInput);
    Matrix diag(2, 2);
    diag << 0.9, 0, 0, 1;
    CHECK_THROWS_AS(LetterEnsemble(SymMatrix(diag), {0.5, 0.5}), InvalidInput);
}

TEST_CASE("build_nn12_code") {
    const Code c3 = build_nn12_code(3);
    CHECK(c3.words() == std::vector<Word>{0b000, 0b011, 0b101, 0b110});

    const Code c4 = build_nn12_code(4);
    REQUIRE(c4.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(c4.word(i) == c3.word(i));
        CHECK(c4.word(i + 4) == (0b1000 | (c3.word(i) ^ 0b111)));
    }

    for (int n = 3; n <= 10; ++n) {
        const Code c = build_nn12_code(n);
        CHECK(c.size() == (std::size_t{1} << (n - 1)));
        std::set<Word> distinct(c.words().begin(), c.words().end());
        CHECK(distinct.size() == c.size());
        for (Word w : c.words()) CHECK(hamming_weight(w) % 2 == 0);
        CHECK(c.priors()[0] == std::ldexp(1.0, -(n - 1)));
    }
    CHECK_THROWS_AS(build_nn12_code(2), InvalidInput);
}

TEST_CASE("nn12 Gram follows the block recursion") {
    // Gamma(n) = [[Gamma(n-1), k^2 Lambda(n-1)], [k^2 Lambda(n-1), Gamma(n-1)]] and
    // Lambda(n-1) = [[Gamma(n-2), Lambda(n-2)], [Lambda(n-2), Gamma(n-2)]].
    const double k = 0.7;
    auto g = [&](int n) { return gram(build_nn12_code(n), k, false).matrix.matrix(); };
    auto lambda = [&](int n) {  // Lambda(n - 1) read off Gamma(n)
        const Matrix m = g(n);
        const Index h = m.rows() / 2;
        return Matrix(m.topRightCorner(h, h) / (k * k));
    };
    for (int n = 4; n <= 9; ++n) {
        const Matrix gn = g(n);
        const Matrix prev = g(n - 1);
        const Index h = prev.rows();
        CHECK(max_abs(gn.topLeftCorner(h, h) - prev) == 0.0);
        CHECK(max_abs(gn.bottomRightCorner(h, h) - prev) == 0.0);
        CHECK(max_abs(gn.topRightCorner(h, h) - gn.bottomLeftCorner(h, h)) == 0.0);
        if (n >= 5) {
            const Matrix l = lambda(n);
            const Matrix l_prev = lambda(n - 1);
            const Matrix g_prev2 = g(n - 2);
            const Index q = g_prev2.rows();
            CHECK(max_abs(l.topLeftCorner(q, q) - g_prev2) <= 1e-14);
            CHECK(max_abs(l.bottomRightCorner(q, q) - g_prev2) <= 1e-14);
            CHECK(max_abs(l.topRightCorner(q, q) - l_prev) <= 1e-14);
            CHECK(max_abs(l.bottomLeftCorner(q, q) - l_prev) <= 1e-14);
        }
    }
}

TEST_CASE("build_simplex_code") {
    for (int r = 2; r <= 5; ++r) {
        const Code c = build_simplex_code(r);
        CHECK(c.n() == (1 << r) - 1);
        CHECK(c.size() == (std::size_t{1} << r));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                CHECK(hamming_distance(c.word(i), c.word(j)) == (1 << (r - 1)));
    }
    CHECK_THROWS_AS(build_simplex_code(1), InvalidInput);
    CHECK_THROWS_AS(build_simplex_code(7), ResourceLimit);
}

TEST_CASE("codeword_states") {
    SUBCASE("n = 1 gives the letters") {
        const StateEmbedding s = codeword_states(Code::uniform(1, {0, 1}), 0.7);
        const LetterPair l = embed_binary_letters(0.7);
        CHECK(max_abs(s.vectors.col(0) - l.plus) == 0.0);
        CHECK(max_abs(s.vectors.col(1) - l.minus) == 0.0);
    }
    SUBCASE("orthogonal letters give orthonormal codewords") {
        const StateEmbedding s = codeword_states(Code::uniform(2, {0b00, 0b11}), 0.0);
        CHECK(s.dim == 4);
        CHECK(max_abs(s.vectors.transpose() * s.vectors - Matrix::Identity(2, 2)) <= 1e-15);
    }
    SUBCASE("length-3 even-weight code at 0.5") {
        const StateEmbedding s = codeword_states(build_nn12_code(3), 0.5);
        const Matrix g = s.vectors.transpose() * s.vectors;
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j) CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 : 0.25).epsilon(1e-12));
    }
    SUBCASE("memory guard") {
        const Code big = Code::uniform(21, {0, 1});
        CHECK_THROWS_AS(codeword_states(big, 0.5), ResourceLimit);
    }
}

TEST_CASE("gram matches the embedding and the letter-by-letter oracle") {
    for (int n = 3; n <= 10; ++n) {
        const Code c = build_nn12_code(n);
        for (double k : {0.0, 0.35, 0.9}) {
            const Matrix g = gram(c, k, false).matrix.matrix();
            const StateEmbedding s = codeword_states(c, k);
            CHECK(max_abs(g - s.vectors.transpose() * s.vectors) <= 1e-10);
            if (n <= 6) {
                const oracle::Mat o = oracle::gram_of_words(c.words(), n, k);
                double worst = 0.0;
                for (Index i = 0; i < g.rows(); ++i)
                    for (Index j = 0; j < g.cols(); ++j) worst = std::max(worst, std::abs(g(i, j) - o[i][j]));
                CHECK(worst <= 1e-14);
            }
        }
    }
}

TEST_CASE("gram examples") {
    const Matrix g3 = gram(build_nn12_code(3), 0.6, false).matrix.matrix();
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) CHECK(g3(i, j) == doctest::Approx(i == j ? 1.0 : 0.36).epsilon(1e-15));
    const Matrix g7 = gram(build_simplex_code(3), 0.9, false).matrix.matrix();
    for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 8; ++j) CHECK(g7(i, j) == doctest::Approx(i == j ? 1.0 : 0.6561).epsilon(1e-14));
    CHECK(max_abs(gram(build_simplex_code(3), 0.0, false).matrix.matrix() - Matrix::Identity(8, 8)) == 0.0);

    const Code weighted(2, {0b00, 0b11}, {0.25, 0.75});
    const GramMatrix gw = gram(weighted, 0.5, true);
    CHECK(gw.weighted);
    CHECK(gw.matrix(0, 0) == doctest::Approx(0.25));
    CHECK(gw.matrix(0, 1) == doctest::Approx(0.25 * std::sqrt(0.25 * 0.75)));
}

TEST_CASE("full_product_code") {
    const std::vector<double> letters{0.3, 0.7};
    const Code c = full_product_code(3, letters);
    CHECK(c.size() == 8);
    CHECK(c.priors()[0] == doctest::Approx(0.027));
    CHECK(c.priors()[0b101] == doctest::Approx(0.3 * 0.49));
    const std::vector<double> bad{0.5, 0.4};
    CHECK_THROWS_AS(full_product_code(2, bad), InvalidInput);
}
