#include "piq/posner.hpp"

#include <cmath>
#include <stdexcept>

#include "piq/algebra.hpp"

namespace piq {

IntegerMatrixIdeal ideal_generated(int n, const std::vector<QMat>& generators) {
    if (n <= 0) throw std::invalid_argument("matrix size must be positive");
    Int k = 0;
    for (const QMat& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("generator size mismatch: expected " +
                                        std::to_string(n) + "x" + std::to_string(n));
        if (!g.is_integral())
            throw std::invalid_argument("generator has non-integer entries");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) k = gcd(k, g.at(i, j).get_num());
    }
    k = abs(k);
    return IntegerMatrixIdeal{n, k};
}

namespace {

int matrix_size_of(const StructureAlgebra& alg) {
    const int dim = alg.dim();
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (n * n != dim)
        throw std::invalid_argument("algebra dimension is not a perfect square");
    // Structure must match matrix units: e_rs e_tu = [s == t] e_ru.
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const int s = i % n, t = j / n;
            const auto& cell = alg.cell(i, j);
            if (s != t) {
                if (!cell.empty())
                    throw std::invalid_argument("algebra is not a matrix algebra");
            } else if (cell.size() != 1 || cell[0].k != (i / n) * n + (j % n) ||
                       !rat_is_one(cell[0].c)) {
                throw std::invalid_argument("algebra is not a matrix algebra");
            }
        }
    return n;
}

}  // namespace

MultOperator central_value_operator(const StructureAlgebra& matn) {
    const int n = matrix_size_of(matn);
    MultOperator::Pairs pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pairs.emplace_back(basis_element(matn, i * n + j),
                               basis_element(matn, j * n + i));
    MultOperator op = MultOperator::from_pairs(matn, pairs);
    // T(e_pq) = trace(e_pq) * I on every matrix unit, exactly.
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Element value = op.apply(basis_element(matn, p * n + q));
            Element expected = p == q ? unit_element(matn) : zero_element(matn);
            if (!(value == expected))
                throw std::logic_error("central value operator failed verification");
        }
    return op;
}

QMat ideal_center_witness(const IntegerMatrixIdeal& ideal) {
    if (ideal.k == 0)
        throw std::invalid_argument("the zero ideal meets the center only in 0");
    const int n = ideal.n;
    StructureAlgebra matn = matrix_algebra(n);
    MultOperator trace_op = central_value_operator(matn);
    // k * e_11 lies in the ideal; its central value is k * I_n.
    Element seed = basis_element(matn, 0) * Rat(ideal.k);
    Element value = trace_op.apply(seed);
    QMat witness(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) witness.at(i, j) = value.coords()[i * n + j];
    // Verify centrality (commutes with all matrix units) and membership.
    for (int u = 0; u < n * n; ++u) {
        Element e = basis_element(matn, u);
        if (!(value * e == e * value))
            throw std::logic_error("center witness does not commute");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat& entry = witness.at(i, j);
            if (!rat_is_integer(entry) ||
                !mpz_divisible_p(entry.get_num().get_mpz_t(), ideal.k.get_mpz_t()))
                throw std::logic_error("center witness escapes the ideal");
        }
    return witness;
}

CentralQuotient central_quotient_form(const QMat& q) {
    Int z = 1;
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j) z = lcm(z, q.at(i, j).get_den());
    CentralQuotient result{z, q * Rat(z)};
    return result;
}

}  // namespace piq
