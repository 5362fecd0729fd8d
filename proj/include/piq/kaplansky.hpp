#ifndef PIQ_KAPLANSKY_HPP
#define PIQ_KAPLANSKY_HPP

#include <string>
#include <utility>
#include <vector>

#include "piq/identity.hpp"
#include "piq/multalg.hpp"
#include "piq/ncpoly.hpp"

namespace piq {

/// True iff dim span{L_{e_i} R_{e_j}} = (dim A)^2, i.e. the multiplication
/// algebra is all of End(A). For a finite-dimensional unital rational
/// algebra this holds exactly when A is simple with center Q*1.
/// Throws on a non-unital algebra.
bool is_central_simple(const StructureAlgebra& alg);

enum class MartindaleStatus {
    Ok,
    NotCentralSimple,       // precondition violation
    DependentLeftElements,  // precondition violation
    OperatorMismatch,       // precondition violation
    SpanCounterexample,     // conclusion failed: signals an implementation bug
};

struct MartindaleReport {
    MartindaleStatus status = MartindaleStatus::Ok;
    std::string detail;
    /// Row i: coefficients expanding lhs b_i over the rhs d_j (when Ok).
    std::vector<std::vector<Rat>> expansion;
    int counterexample_index = -1;  // offending i when SpanCounterexample

    bool ok() const { return status == MartindaleStatus::Ok; }
};

/// Checks the span conclusion for an operator identity
/// sum_i a_i x b_i = sum_j c_j x d_j on a central simple algebra with
/// independent a_i: every b_i must be a linear combination of the d_j.
/// Preconditions are verified and reported distinctly; a failed conclusion
/// under valid preconditions cannot happen mathematically and is flagged
/// as SpanCounterexample.
MartindaleReport verify_martindale(const StructureAlgebra& alg,
                                   const MultOperator::Pairs& lhs,
                                   const MultOperator::Pairs& rhs);

/// Any operator in the span of the basis product operators, rewritten as
/// sum_i L_{e_i} R_{b_i} over the basis: pairs (e_i, b_i). Throws when the
/// operator lies outside span{L_{e_i} R_{e_j}} (possible only for
/// non-central-simple algebras).
MultOperator::Pairs express_over_basis_pairs(const StructureAlgebra& alg,
                                             const MultOperator& op);

/// An element c with b1 c b2 != b2 c b1, found by scanning basis elements
/// in order. Requires a central simple algebra and independent b1, b2 (a
/// dependency is reported in the exception message). A full-scan failure
/// would contradict the span theorem and raises std::logic_error.
Element noncommuting_witness(const StructureAlgebra& alg, const Element& b1,
                             const Element& b2);

/// Splits a multilinear f into (f_i, f_j): monomials where x_i occurs
/// before x_j, and the rest. f_i + f_j = f.
std::pair<NcPoly, NcPoly> before_after_split(const NcPoly& f, Var i, Var j);

struct FiniteRankWitness {
    MultOperator V;            // nonzero, range inside span(D)
    std::vector<Element> D;
    Var x_var = 0, y_var = 0;  // the chosen variable pair (x before y side)
    std::vector<int> assignment;  // frozen basis tuple per variable slot
    std::vector<Var> slots;       // variable of each assignment position
    int descent_steps = 0;
};

/// Extracts a finite-rank witness from a multilinear identity f of a
/// central simple algebra: finds a variable pair whose before/after parts
/// are both non-identities (descending into an identity part when needed),
/// freezes all other variables at the first basis assignment with
/// f_i != 0, rewrites both sides as sum_i a_i x W_i(y) = sum_j S_j(y) x d_j
/// with independent a_i, and returns the first nonzero W_i together with
/// the d_j. Postconditions (V != 0, range(V) inside span(D)) are verified
/// exactly. All search orders are fixed, so the result is deterministic.
FiniteRankWitness finite_rank_witness(const StructureAlgebra& alg, const NcPoly& f);

}  // namespace piq

#endif
