#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "piq/matrix.hpp"

using namespace piq;
using piq::testing::Rng;
using piq::testing::naive_rank;
using piq::testing::random_matrix;

TEST_CASE("rank agrees with the naive elimination oracle on random matrices") {
    Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const int r = static_cast<int>(rng.range(1, 6));
        const int c = static_cast<int>(rng.range(1, 6));
        QMat m = random_matrix(rng, r, c);
        // Mix in rank-deficient cases: duplicate a row half the time.
        if (r >= 2 && rng.range(0, 1) == 0)
            for (int j = 0; j < c; ++j) m.at(r - 1, j) = m.at(0, j);
        CHECK(rank(m) == naive_rank(m));
    }
}

TEST_CASE("rank of identity and zero") {
    CHECK(rank(QMat::identity(5)) == 5);
    CHECK(rank(QMat(3, 4)) == 0);
}

TEST_CASE("kernel vectors are exact solutions and complete") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int r = static_cast<int>(rng.range(1, 5));
        const int c = static_cast<int>(rng.range(1, 5));
        QMat m = random_matrix(rng, r, c);
        auto kernel = kernel_basis(m);
        CHECK(static_cast<int>(kernel.size()) == c - rank(m));
        for (const auto& v : kernel) {
            auto image = m.apply(v);
            for (const Rat& x : image) CHECK(rat_is_zero(x));
        }
    }
}

TEST_CASE("solve returns exact solutions exactly when consistent") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int r = static_cast<int>(rng.range(1, 5));
        const int c = static_cast<int>(rng.range(1, 5));
        QMat m = random_matrix(rng, r, c);
        // Build a consistent rhs from a known solution.
        std::vector<Rat> x0(c);
        for (int j = 0; j < c; ++j) x0[j] = rng.rational();
        auto b = m.apply(x0);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
    // An inconsistent system.
    QMat m(2, 1);
    m.at(0, 0) = 1;
    m.at(1, 0) = 1;
    CHECK_FALSE(solve(m, {Rat(1), Rat(2)}).has_value());
}

TEST_CASE("RowSpace tracks rank incrementally and answers membership") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int c = static_cast<int>(rng.range(1, 5));
        QMat m = random_matrix(rng, 6, c);
        RowSpace space(c);
        for (int i = 0; i < 6; ++i) space.add(m.row(i));
        CHECK(space.rank() == rank(m));
        // Any row combination is contained.
        std::vector<Rat> combo(c, Rat(0));
        for (int i = 0; i < 6; ++i) {
            Rat w = rng.rational();
            for (int j = 0; j < c; ++j) combo[j] += w * m.at(i, j);
        }
        CHECK(space.contains(combo));
    }
}

TEST_CASE("matrix parsing round-trips and rejects garbage") {
    QMat m = parse_matrix("[[1/2, 1/3], [0, 1]]");
    CHECK(m.rows() == 2);
    CHECK(m.at(0, 1) == rat(1, 3));
    CHECK(parse_matrix(m.to_string()) == m);
    CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix("[[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix("[[1/0]]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix("[]"), std::invalid_argument);
}

TEST_CASE("fraction-free elimination keeps scaled entries integral") {
    // Not required for correctness, but it is the point of the Bareiss
    // update: echelon entries of an integer matrix stay integers.
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        QMat m = random_matrix(rng, 4, 5, /*integral=*/true);
        EchelonForm e = echelonize(m);
        CHECK(e.mat.is_integral());
    }
}
