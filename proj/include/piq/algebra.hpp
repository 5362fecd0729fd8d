#ifndef PIQ_ALGEBRA_HPP
#define PIQ_ALGEBRA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "piq/matrix.hpp"
#include "piq/rational.hpp"

namespace piq {

class Element;

/// Finite-dimensional rational algebra given by a basis e_1..e_n and
/// structure constants gamma_{ijk} (the k-th coordinate of e_i * e_j).
/// Associativity on all basis triples and, when present, the two-sided
/// unit law are validated at construction; instances are immutable
/// afterwards and safe to share across threads.
class StructureAlgebra {
  public:
    struct TableEntry {
        int k;
        Rat c;
    };

    /// gamma is dense, indexed (i*n + j)*n + k. Throws std::invalid_argument
    /// on inconsistent sizes, non-associative data (reporting the offending
    /// triple) or a bad unit.
    StructureAlgebra(int n, std::vector<Rat> gamma,
                     std::optional<std::vector<Rat>> unit,
                     std::string label = "");

    int dim() const { return n_; }
    const std::string& label() const { return label_; }

    /// Sparse row of the multiplication table: e_i * e_j as (k, gamma) pairs.
    const std::vector<TableEntry>& cell(int i, int j) const {
        return table_[static_cast<std::size_t>(i) * n_ + j];
    }
    Rat gamma(int i, int j, int k) const;

    bool has_unit() const { return unit_.has_value(); }
    const std::vector<Rat>& unit_coords() const;

    /// Bilinear extension of the table to coordinate vectors.
    std::vector<Rat> multiply_coords(const std::vector<Rat>& a,
                                     const std::vector<Rat>& b) const;

    bool operator==(const StructureAlgebra& o) const = delete;

  private:
    int n_;
    std::vector<std::vector<TableEntry>> table_;  // (i,j) -> sparse products
    std::optional<std::vector<Rat>> unit_;
    std::string label_;
};

/// Coordinate tuple relative to the basis of a StructureAlgebra. Holds a
/// pointer to its algebra; the algebra must outlive the element.
class Element {
  public:
    Element(const StructureAlgebra& algebra, std::vector<Rat> coords);

    const StructureAlgebra& algebra() const { return *alg_; }
    const std::vector<Rat>& coords() const { return coords_; }
    bool is_zero() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;  // algebra product
    Element operator*(const Rat& s) const;
    Element operator-() const;
    bool operator==(const Element& o) const;

    std::string to_string() const;  // "(c1, c2, ..., cn)"

  private:
    void check_same(const Element& o) const;
    const StructureAlgebra* alg_;
    std::vector<Rat> coords_;
};

Element basis_element(const StructureAlgebra& a, int i);  // 0-based index
Element zero_element(const StructureAlgebra& a);
Element unit_element(const StructureAlgebra& a);  // throws when non-unital

/// Built-in algebras.
StructureAlgebra matrix_algebra(int k);            // M_k(Q) on the e_rs basis
StructureAlgebra quaternion_algebra();             // basis 1, i, j, k
StructureAlgebra zero_mult_algebra(int k);         // all products zero
StructureAlgebra upper_triangular_algebra(int k);  // e_rs for r <= s
StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b);

/// Plain-text format: '#' comments, "dim n", optional "unit c1 .. cn",
/// lines "e i j : c1 .. cn" (1-based; omitted pairs default to zero).
StructureAlgebra parse_algebra(const std::string& text, std::string label = "file");
StructureAlgebra load_algebra_file(const std::string& path);

/// Serializes in the same format (sparse rows only).
std::string algebra_to_text(const StructureAlgebra& a);

/// Basis of the center {z : z e_i = e_i z for all i}, computed as the
/// kernel of the stacked commutator system. Deterministic.
std::vector<Element> center_basis(const StructureAlgebra& a);

/// Unit present and center = span(unit).
bool is_central(const StructureAlgebra& a);

/// Pairs (u_k, v_k) with sum u_k a v_k = 1, found by solving
/// "1 in span{e_i a e_j}" (that span equals the two-sided ideal generated
/// by a, in a unital algebra). The result is verified exactly before it is
/// returned. nullopt certifies that the ideal generated by a is proper.
/// Throws on a non-unital algebra or a zero element.
std::optional<std::vector<std::pair<Element, Element>>>
express_one_as_ideal_combination(const StructureAlgebra& a, const Element& x);

}  // namespace piq

#endif
