#ifndef PIQ_LINEARIZE_HPP
#define PIQ_LINEARIZE_HPP

#include <vector>

#include "piq/ncpoly.hpp"

namespace piq {

/// p(x_i -> x_i + x_j) - p - p(x_i -> x_j): the polarization of p in x_i
/// with fresh variable x_j. Every monomial of the result contains both
/// variables. Requires i to occur in p and j not to.
NcPoly polarize(const NcPoly& p, Var i, Var j);

/// Splits p into its multihomogeneous components (terms grouped by
/// multidegree). Components sum to p. Ordered by descending total degree,
/// ties by descending lexicographic exponent vector. Throws on zero input.
std::vector<NcPoly> multihomogeneous_components(const NcPoly& p);

/// A nonzero multilinear polynomial of degree <= degree(p) that is an
/// identity of every rational algebra p is an identity of: selects the
/// leading multihomogeneous component, polarizes the lowest variable of
/// per-variable degree >= 2 (fresh index = max + 1) until multilinear,
/// then renumbers variables to 1..m. Deterministic. Throws on zero input.
NcPoly multilinearize(const NcPoly& p);

}  // namespace piq

#endif
