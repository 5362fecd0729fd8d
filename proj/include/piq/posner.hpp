#ifndef PIQ_POSNER_HPP
#define PIQ_POSNER_HPP

#include <vector>

#include "piq/matrix.hpp"
#include "piq/multalg.hpp"

namespace piq {

/// Two-sided ideal of the ring of n x n integer matrices, in canonical
/// form: the set of matrices with all entries divisible by k. k = 0 is the
/// zero ideal, k = 1 the whole ring. Every two-sided ideal has this form,
/// with k the gcd of all entries of all members (matrix units isolate
/// entries, integer combinations realize the gcd).
struct IntegerMatrixIdeal {
    int n = 0;
    Int k = 0;
};

/// Canonical form of the ideal generated by the given integer matrices.
/// Throws on a size mismatch or non-integer entries.
IntegerMatrixIdeal ideal_generated(int n, const std::vector<QMat>& generators);

/// The operator T(x) = sum_{i,j} e_ij x e_ji = trace(x) * I_n on a matrix
/// algebra, with its pair presentation {(e_ij, e_ji)}. The trace property
/// is verified exactly on all matrix units before returning. `matn` must
/// be the algebra built by matrix_algebra(n).
MultOperator central_value_operator(const StructureAlgebra& matn);

/// A nonzero central element of the ideal: k * I_n, produced by applying
/// the central value operator to k * e_11. Centrality and membership are
/// verified exactly. Throws on the zero ideal.
QMat ideal_center_witness(const IntegerMatrixIdeal& ideal);

struct CentralQuotient {
    Int z;   // minimal positive common denominator
    QMat r;  // integer matrix with q = r / z
};

/// Writes a rational matrix as z^{-1} r with z the least common multiple
/// of the entry denominators and r = z * q.
CentralQuotient central_quotient_form(const QMat& q);

}  // namespace piq

#endif
