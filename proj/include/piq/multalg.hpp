#ifndef PIQ_MULTALG_HPP
#define PIQ_MULTALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "piq/algebra.hpp"
#include "piq/matrix.hpp"

namespace piq {

/// Matrix of x -> a x in basis coordinates (column j = coords of a * e_j).
QMat left_mult_matrix(const StructureAlgebra& alg, const Element& a);

/// Matrix of x -> x b.
QMat right_mult_matrix(const StructureAlgebra& alg, const Element& b);

/// Linear operator on a StructureAlgebra, acting on coordinate columns.
/// Optionally carries a presentation as pairs (a_k, b_k) meaning
/// sum_k L_{a_k} R_{b_k}; when both matrix and presentation are supplied
/// their consistency is checked at construction.
class MultOperator {
  public:
    using Pairs = std::vector<std::pair<Element, Element>>;

    MultOperator(const StructureAlgebra& alg, QMat matrix);
    MultOperator(const StructureAlgebra& alg, QMat matrix, Pairs presentation);
    static MultOperator from_pairs(const StructureAlgebra& alg, Pairs presentation);
    static MultOperator zero(const StructureAlgebra& alg);
    static MultOperator identity(const StructureAlgebra& alg);

    const StructureAlgebra& algebra() const { return *alg_; }
    const QMat& matrix() const { return mat_; }
    const std::optional<Pairs>& presentation() const { return pres_; }

    Element apply(const Element& x) const;
    bool is_zero() const { return mat_.is_zero(); }

    /// Sum/difference keep presentations when both operands carry one
    /// (concatenated); composition and scaling return matrix-only results.
    MultOperator operator+(const MultOperator& o) const;
    MultOperator operator-(const MultOperator& o) const;
    MultOperator operator*(const MultOperator& o) const;  // composition
    MultOperator operator*(const Rat& s) const;
    bool operator==(const MultOperator& o) const;

  private:
    void check_same(const MultOperator& o) const;
    const StructureAlgebra* alg_;
    QMat mat_;
    std::optional<Pairs> pres_;
};

/// dim of span{L_{e_i} R_{e_j}}: the rank of the n^2 product operators as
/// flattened (row-major) vectors of length n^2. For a unital algebra this
/// is the dimension of the full multiplication algebra.
int mult_algebra_dim(const StructureAlgebra& alg);

int operator_rank(const MultOperator& w);

/// Rewrites a presentation so that the left elements are linearly
/// independent: greedy first-come selection, with each dependent left
/// element's contribution folded into the selected ones through its
/// expansion coefficients. The operator matrix is unchanged (verified).
/// Throws on an empty list.
MultOperator::Pairs reduce_to_independent_left(const StructureAlgebra& alg,
                                               const MultOperator::Pairs& pairs);

}  // namespace piq

#endif
