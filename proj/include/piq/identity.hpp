#ifndef PIQ_IDENTITY_HPP
#define PIQ_IDENTITY_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "piq/algebra.hpp"
#include "piq/ncpoly.hpp"

namespace piq {

/// Sparse coordinate vector: (basis index, coefficient) pairs.
using SparseVec = std::vector<std::pair<int, Rat>>;

/// Shared-prefix evaluator for one polynomial over one algebra: the words
/// of f are stored in a trie, and an assignment is evaluated by walking
/// the trie with left-to-right partial products, pruning any subtree whose
/// partial product is zero. Not thread-safe (owns scratch space); build
/// one per thread.
class WordEvaluator {
  public:
    WordEvaluator(const StructureAlgebra& alg, const NcPoly& f);

    /// Sorted variable set of f; assignments are indexed by slot.
    const std::vector<Var>& slots() const { return slots_; }

    /// Evaluates at assignment[slot]; returns dense coordinates.
    const std::vector<Rat>& eval(const std::vector<SparseVec>& assignment);

    bool vanishes(const std::vector<SparseVec>& assignment);

  private:
    struct Node {
        int slot;  // variable slot of the letter
        int first_child = -1;
        int next_sibling = -1;
        Rat coeff;  // term coefficient when terminal
        bool terminal = false;
    };
    struct Level {
        std::vector<Rat> coeff;
        std::vector<unsigned> mark;
        std::vector<int> touched;
        unsigned epoch = 0;
    };

    void multiply_into(Level& out, const Level& parent, const SparseVec& elem);
    void walk(int node, int depth, const std::vector<SparseVec>& assignment);

    const StructureAlgebra* alg_;
    std::vector<Var> slots_;
    std::vector<Node> nodes_;
    int root_first_child_ = -1;
    Rat constant_term_;
    bool has_constant_ = false;

    std::vector<Level> levels_;
    std::vector<Rat> out_;
    Rat tmp_, tmp2_;
};

/// Exact evaluation of f at the assignment sigma (monomials as
/// left-to-right products). Throws when sigma misses a variable of f, or
/// when f has a constant term and the algebra has no unit.
Element eval_poly(const StructureAlgebra& alg, const NcPoly& f,
                  const std::map<Var, Element>& sigma);

struct IdentityOptions {
    bool alternating_fast_path = true;
    int threads = 1;
};

struct MultilinearCheck {
    bool identity = false;
    bool alternating = false;          // fast path was taken
    std::vector<int> counterexample;   // basis indices per slot (0-based)
    std::vector<Rat> value;            // f at the counterexample
};

/// Basis-tuple criterion: a multilinear polynomial is an identity iff it
/// vanishes on all basis tuples. The counterexample, when present, is the
/// first failing tuple in odometer order (for alternating polynomials the
/// first failing strictly increasing tuple), independent of thread count.
MultilinearCheck is_identity_multilinear(const StructureAlgebra& alg,
                                         const NcPoly& f,
                                         const IdentityOptions& opts = {});

struct IdentityVerdict {
    bool identity = false;
    /// For a non-identity: the multilinear polynomial whose basis-tuple
    /// check failed (f itself when f is multilinear, otherwise the
    /// multilinearization of some multihomogeneous component) plus the
    /// failing tuple.
    std::optional<NcPoly> failed_multilinear;
    MultilinearCheck detail;
};

/// Identity test for arbitrary nonzero f: each multihomogeneous component
/// is fully multilinearized and checked on basis tuples (equivalent over
/// the rationals). Throws on the zero polynomial.
IdentityVerdict check_identity(const StructureAlgebra& alg, const NcPoly& f,
                               const IdentityOptions& opts = {});

bool is_identity(const StructureAlgebra& alg, const NcPoly& f,
                 const IdentityOptions& opts = {});

enum class CentralPolyVerdict {
    Central,          // not an identity, and [f, x_fresh] is an identity
    IsIdentity,       // excluded: f itself is an identity
    NoncentralValue,  // [f, x_fresh] is not an identity
};

/// Requires a unital algebra and nonzero f.
CentralPolyVerdict central_polynomial_verdict(const StructureAlgebra& alg,
                                              const NcPoly& f,
                                              const IdentityOptions& opts = {});

bool is_central_polynomial(const StructureAlgebra& alg, const NcPoly& f,
                           const IdentityOptions& opts = {});

/// Basis of the space of multilinear identities of degree m in x1..xm:
/// kernel of the evaluation map on basis tuples, accumulated tuple by
/// tuple in odometer order with early exit once the rank reaches m!.
/// Deterministic basis (reduced kernel, free columns ascending).
std::vector<NcPoly> identity_space(const StructureAlgebra& alg, unsigned m);

struct DegreeCapExceeded : std::runtime_error {
    unsigned cap;
    explicit DegreeCapExceeded(unsigned c)
        : std::runtime_error("no nonzero multilinear identity up to degree " +
                             std::to_string(c)),
          cap(c) {}
};

/// Least m with identity_space(alg, m) nontrivial. The default cap is
/// dim^2 + 1 (an identity of degree dim + 1 <= cap always exists).
unsigned min_multilinear_identity_degree(const StructureAlgebra& alg,
                                         unsigned cap = 0);

}  // namespace piq

#endif
