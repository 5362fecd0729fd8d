// Test-only oracles, kept independent of the library's elimination and
// evaluation paths: plain textbook Gauss-Jordan rank, direct polynomial
// evaluation, and a deterministic cross-platform RNG.
#ifndef PIQ_TESTS_ORACLES_HPP
#define PIQ_TESTS_ORACLES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "piq/algebra.hpp"
#include "piq/matrix.hpp"
#include "piq/ncpoly.hpp"
#include "piq/rational.hpp"

namespace piq::testing {

// Rank by naive rational Gauss-Jordan with first-nonzero pivoting: a
// different elimination order and pivot rule than the library's.
inline int naive_rank(QMat m) {
    int rank = 0;
    const int rows = m.rows(), cols = m.cols();
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (!rat_is_zero(m.at(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Rat inv = Rat(1) / m.at(rank, c);
        for (int j = 0; j < cols; ++j) m.at(rank, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || rat_is_zero(m.at(i, c))) continue;
            Rat f = m.at(i, c);
            for (int j = 0; j < cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Direct term-by-term evaluation with plain Element products; no tries,
// no pruning.
inline Element naive_eval(const StructureAlgebra& alg, const NcPoly& f,
                          const std::map<Var, Element>& sigma) {
    Element acc = zero_element(alg);
    for (const auto& [m, c] : f.terms()) {
        Element prod =
            m.is_one() ? unit_element(alg) : sigma.at(m.word.front());
        for (std::size_t p = 1; p < m.word.size(); ++p)
            prod = prod * sigma.at(m.word[p]);
        acc = acc + prod * c;
    }
    return acc;
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rat rational(long lo = -4, long hi = 4, long max_den = 3) {
        return rat(range(lo, hi), range(1, max_den));
    }
};

inline NcPoly random_poly(Rng& rng, int max_terms = 5, Var max_var = 3,
                          int max_len = 4) {
    NcPoly p;
    const int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        std::vector<Var> word;
        const int len = static_cast<int>(rng.range(0, max_len));
        for (int i = 0; i < len; ++i)
            word.push_back(static_cast<Var>(rng.range(1, max_var)));
        p += NcPoly::term(Monomial(word), rng.rational());
    }
    return p;
}

inline Element random_element(const StructureAlgebra& alg, Rng& rng, long lo = -3,
                              long hi = 3) {
    std::vector<Rat> coords(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) coords[i] = rat(rng.range(lo, hi));
    return Element(alg, std::move(coords));
}

inline QMat random_matrix(Rng& rng, int rows, int cols, bool integral = false) {
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = integral ? rat(rng.range(-5, 5)) : rng.rational();
    return m;
}

}  // namespace piq::testing

#endif
