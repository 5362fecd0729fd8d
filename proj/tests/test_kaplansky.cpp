#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "piq/kaplansky.hpp"
#include "piq/linearize.hpp"

using namespace piq;
using piq::testing::Rng;
using piq::testing::random_element;

namespace {
NcPoly x(Var i) { return NcPoly::variable(i); }
int eu(int k, int r, int s) { return r * k + s; }

// Q(i) as a 2-dimensional algebra: basis {1, w} with w^2 = -1.
StructureAlgebra gaussian_field() {
    std::vector<Rat> gamma(8, Rat(0));
    auto set = [&](int i, int j, int k, long v) { gamma[(i * 2 + j) * 2 + k] = v; };
    set(0, 0, 0, 1);
    set(0, 1, 1, 1);
    set(1, 0, 1, 1);
    set(1, 1, 0, -1);
    return StructureAlgebra(2, std::move(gamma), std::vector<Rat>{Rat(1), Rat(0)});
}
}  // namespace

TEST_CASE("central simplicity classification of the shipped families") {
    for (int k = 1; k <= 4; ++k) CHECK(is_central_simple(matrix_algebra(k)));
    CHECK(is_central_simple(quaternion_algebra()));
    CHECK_FALSE(is_central_simple(direct_sum(matrix_algebra(1), matrix_algebra(1))));
    CHECK_FALSE(is_central_simple(upper_triangular_algebra(2)));
    CHECK_FALSE(is_central_simple(gaussian_field()));
    CHECK_THROWS_AS(is_central_simple(zero_mult_algebra(2)), std::invalid_argument);
}

TEST_CASE("gaussian field has mult dimension 4 < dim^2") {
    // Commutative 2-dimensional: L_a R_b span the regular representation
    // products; dim M = 2 here (L_w = R_w and L_w^2 = -1).
    CHECK(mult_algebra_dim(gaussian_field()) == 2);
}

TEST_CASE("verify_martindale trivial instance") {
    StructureAlgebra m2 = matrix_algebra(2);
    Rng rng(91);
    Element b = random_element(m2, rng);
    MultOperator::Pairs one_pair{{unit_element(m2), b}};
    auto report = verify_martindale(m2, one_pair, one_pair);
    REQUIRE(report.ok());
    REQUIRE(report.expansion.size() == 1);
    REQUIRE(report.expansion[0].size() == 1);
    CHECK(report.expansion[0][0] == rat(1));
}

TEST_CASE("verify_martindale on a diagonal-pair instance re-expressed over basis pairs") {
    StructureAlgebra m2 = matrix_algebra(2);
    MultOperator::Pairs lhs{{basis_element(m2, eu(2, 0, 0)), basis_element(m2, eu(2, 0, 0))},
                            {basis_element(m2, eu(2, 1, 1)), basis_element(m2, eu(2, 1, 1))}};
    MultOperator op = MultOperator::from_pairs(m2, lhs);
    MultOperator::Pairs rhs = express_over_basis_pairs(m2, op);
    auto report = verify_martindale(m2, lhs, rhs);
    REQUIRE(report.ok());
    // Expansion really reconstructs each b_i.
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        Element acc = zero_element(m2);
        for (std::size_t j = 0; j < rhs.size(); ++j)
            acc = acc + rhs[j].second * report.expansion[i][j];
        CHECK(acc == lhs[i].second);
    }
}

TEST_CASE("verify_martindale reports precondition failures distinctly") {
    StructureAlgebra m2 = matrix_algebra(2);
    Element e11 = basis_element(m2, 0), e12 = basis_element(m2, 1);
    // Dependent left elements.
    MultOperator::Pairs dep{{e11, e12}, {e11 * Rat(2), e12}};
    CHECK(verify_martindale(m2, dep, dep).status ==
          MartindaleStatus::DependentLeftElements);
    // Operator mismatch.
    MultOperator::Pairs lhs{{e11, e12}};
    MultOperator::Pairs rhs{{e11, e11}};
    CHECK(verify_martindale(m2, lhs, rhs).status == MartindaleStatus::OperatorMismatch);
    // Not central simple.
    StructureAlgebra ut = upper_triangular_algebra(2);
    MultOperator::Pairs pairs{{unit_element(ut), basis_element(ut, 0)}};
    CHECK(verify_martindale(ut, pairs, pairs).status ==
          MartindaleStatus::NotCentralSimple);
}

TEST_CASE("randomized span-conclusion suite on M2 and M3") {
    Rng rng(97);
    for (int size : {2, 3}) {
        StructureAlgebra alg = matrix_algebra(size);
        int failures = 0;
        for (int inst = 0; inst < 100; ++inst) {
            const int t = static_cast<int>(rng.range(1, 3));
            MultOperator::Pairs lhs;
            RowSpace span(alg.dim());
            while (static_cast<int>(lhs.size()) < t) {
                Element a = random_element(alg, rng);
                if (!span.add(a.coords())) continue;
                lhs.emplace_back(std::move(a), random_element(alg, rng));
            }
            MultOperator op = MultOperator::from_pairs(alg, lhs);
            MultOperator::Pairs rhs = express_over_basis_pairs(alg, op);
            auto report = verify_martindale(alg, lhs, rhs);
            if (!report.ok()) ++failures;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("express_over_basis_pairs reconstructs the operator") {
    Rng rng(101);
    StructureAlgebra h = quaternion_algebra();
    for (int trial = 0; trial < 20; ++trial) {
        MultOperator::Pairs pairs;
        for (int p = 0; p < 2; ++p)
            pairs.emplace_back(random_element(h, rng), random_element(h, rng));
        MultOperator op = MultOperator::from_pairs(h, pairs);
        MultOperator::Pairs rebased = express_over_basis_pairs(h, op);
        CHECK(MultOperator::from_pairs(h, rebased) == op);
    }
}

TEST_CASE("noncommuting witness examples") {
    StructureAlgebra m2 = matrix_algebra(2);
    Element e11 = basis_element(m2, eu(2, 0, 0)), e22 = basis_element(m2, eu(2, 1, 1));
    Element c = noncommuting_witness(m2, e11, e22);
    CHECK(c == basis_element(m2, eu(2, 0, 1)));  // e12, the first in scan order
    CHECK(e11 * c * e22 == basis_element(m2, eu(2, 0, 1)));
    CHECK((e22 * c * e11).is_zero());

    StructureAlgebra h = quaternion_algebra();
    Element one = basis_element(h, 0), i = basis_element(h, 1);
    Element w = noncommuting_witness(h, one, i);
    CHECK(w == basis_element(h, 2));  // j: ji != ij
    CHECK_FALSE(one * w * i == i * w * one);
}

TEST_CASE("noncommuting witness output verified by recomputation on random input") {
    Rng rng(103);
    StructureAlgebra m3 = matrix_algebra(3);
    int done = 0;
    while (done < 25) {
        Element b1 = random_element(m3, rng), b2 = random_element(m3, rng);
        RowSpace span(9);
        if (!span.add(b1.coords()) || !span.add(b2.coords())) continue;
        Element c = noncommuting_witness(m3, b1, b2);
        CHECK_FALSE(b1 * c * b2 == b2 * c * b1);
        ++done;
    }
}

TEST_CASE("noncommuting witness rejects dependent input") {
    StructureAlgebra m2 = matrix_algebra(2);
    Element b = basis_element(m2, 0);
    CHECK_THROWS_WITH_AS(noncommuting_witness(m2, b, b * Rat(2)),
                         doctest::Contains("dependent"), std::invalid_argument);
}

TEST_CASE("before_after_split") {
    auto [f1, f2] = before_after_split(x(1) * x(2) + x(2) * x(1), 1, 2);
    CHECK(f1 == x(1) * x(2));
    CHECK(f2 == x(2) * x(1));

    auto [s1, s2] = before_after_split(standard_poly(3), 1, 2);
    CHECK(s1.terms().size() == 3);
    CHECK(s2.terms().size() == 3);
    CHECK(s1 + s2 == standard_poly(3));

    CHECK_THROWS_AS(before_after_split(x(1) * x(1), 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(before_after_split(standard_poly(2), 1, 3),
                    std::invalid_argument);
}

TEST_CASE("split halves reassemble on random multilinear polynomials") {
    Rng rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        // Random multilinear polynomial of degree 3.
        NcPoly f;
        std::vector<Var> perm{1, 2, 3};
        do {
            f += NcPoly::term(Monomial(std::vector<Var>(perm)), rng.rational());
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (f.is_zero()) continue;
        if (!is_multilinear(f)) continue;  // some coefficients may vanish
        auto [f1, f2] = before_after_split(f, 1, 3);
        CHECK(f1 + f2 == f);
    }
}

TEST_CASE("finite rank witness from St4 on M2") {
    StructureAlgebra m2 = matrix_algebra(2);
    FiniteRankWitness w = finite_rank_witness(m2, standard_poly(4));
    CHECK_FALSE(w.V.is_zero());
    CHECK(operator_rank(w.V) <= static_cast<int>(w.D.size()));
    // range(V) inside span(D), re-verified here with the library solver.
    QMat d_cols(4, static_cast<int>(w.D.size()));
    for (std::size_t j = 0; j < w.D.size(); ++j)
        for (int r = 0; r < 4; ++r)
            d_cols.at(r, static_cast<int>(j)) = w.D[j].coords()[r];
    for (int c = 0; c < 4; ++c)
        CHECK(solve(d_cols, w.V.matrix().col(c)).has_value());
    // Determinism: an identical run returns the identical witness.
    FiniteRankWitness again = finite_rank_witness(m2, standard_poly(4));
    CHECK(again.V.matrix() == w.V.matrix());
    CHECK(again.assignment == w.assignment);
    CHECK(again.x_var == w.x_var);
    CHECK(again.y_var == w.y_var);
    REQUIRE(again.D.size() == w.D.size());
    for (std::size_t i = 0; i < w.D.size(); ++i) CHECK(again.D[i] == w.D[i]);
}

TEST_CASE("finite rank witness rejects non-identities and small degrees") {
    StructureAlgebra m2 = matrix_algebra(2);
    CHECK_THROWS_AS(finite_rank_witness(m2, standard_poly(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(finite_rank_witness(m2, standard_poly(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(finite_rank_witness(m2, x(1) * x(1)), std::invalid_argument);
    CHECK_THROWS_AS(
        finite_rank_witness(upper_triangular_algebra(2), standard_poly(4)),
        std::invalid_argument);
}

TEST_CASE("finite rank witness on the scalars") {
    // On Q both split halves of St2 are non-identities; the construction
    // runs with empty frozen words and returns a rank-1 operator.
    StructureAlgebra q = matrix_algebra(1);
    FiniteRankWitness w = finite_rank_witness(q, standard_poly(2));
    CHECK(operator_rank(w.V) == 1);
    CHECK(w.x_var == 1);
    CHECK(w.y_var == 2);
    CHECK(w.descent_steps == 0);
}

TEST_CASE("finite rank witness from St6 on M3 and Hall-linearization on M2") {
    StructureAlgebra m3 = matrix_algebra(3);
    FiniteRankWitness w6 = finite_rank_witness(m3, standard_poly(6));
    CHECK_FALSE(w6.V.is_zero());
    CHECK(operator_rank(w6.V) <= static_cast<int>(w6.D.size()));

    // A non-alternating multilinear identity: the multilinearization of
    // [[x1,x2]^2, x3] is an identity of M2.
    StructureAlgebra m2 = matrix_algebra(2);
    NcPoly hall_comm = commutator(parse_poly("[x1,x2]^2"), x(3));
    NcPoly g = multilinearize(hall_comm);
    REQUIRE(is_identity_multilinear(m2, g).identity);
    FiniteRankWitness wh = finite_rank_witness(m2, g);
    CHECK_FALSE(wh.V.is_zero());
    CHECK(operator_rank(wh.V) <= static_cast<int>(wh.D.size()));
}
