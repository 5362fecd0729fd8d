#ifndef PIQ_NCPOLY_HPP
#define PIQ_NCPOLY_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "piq/rational.hpp"

namespace piq {

/// 1-based index of a noncommuting indeterminate x1, x2, ...
using Var = unsigned int;

/// A word in the indeterminates; the empty word is the constant monomial 1.
/// Order of letters is significant.
struct Monomial {
    std::vector<Var> word;

    Monomial() = default;
    explicit Monomial(std::vector<Var> w);

    static Monomial one() { return Monomial(); }

    int degree() const { return static_cast<int>(word.size()); }
    bool is_one() const { return word.empty(); }

    /// Concatenation.
    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return word == o.word; }

    /// x_i -> count of occurrences, for each variable present.
    std::map<Var, int> multidegree() const;

    std::string to_string() const;  // "x1^2*x3", "1" for the empty word
};

/// Degree-lexicographic monomial order (the canonical display order).
struct DegLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    }
};

/// Element of the free algebra over the rationals: a finite term map with
/// no zero coefficients stored. Two polynomials are equal iff their term
/// maps are equal. Immutable in spirit: all operations return new values.
class NcPoly {
  public:
    using TermMap = std::map<Monomial, Rat, DegLexLess>;

    NcPoly() = default;  // zero
    explicit NcPoly(const Rat& constant);
    static NcPoly variable(Var i);  // throws on i == 0
    static NcPoly term(Monomial m, Rat coefficient);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Degree of the zero polynomial (stands in for minus infinity).
    static constexpr int kZeroDegree = -1;
    int degree() const;

    Rat coeff(const Monomial& m) const;
    std::set<Var> variables() const;
    Var max_variable() const;  // 0 for constants and zero

    NcPoly operator+(const NcPoly& o) const;
    NcPoly operator-(const NcPoly& o) const;
    NcPoly operator*(const NcPoly& o) const;
    NcPoly operator-() const;
    NcPoly operator*(const Rat& s) const;
    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    bool operator==(const NcPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const NcPoly& o) const { return !(*this == o); }

  private:
    void add_term(const Monomial& m, const Rat& c);
    TermMap terms_;
};

inline NcPoly operator*(const Rat& s, const NcPoly& p) { return p * s; }

/// Commutator pq - qp.
NcPoly commutator(const NcPoly& p, const NcPoly& q);

/// The alternating sum over all permutations of x1..xm, coefficients equal
/// to the permutation sign. Throws std::invalid_argument for m == 0.
NcPoly standard_poly(unsigned m);

/// If every monomial of p is a word in which each variable of a common set
/// V occurs exactly once (and no other variable occurs), returns V;
/// otherwise nullopt. Throws std::invalid_argument on the zero polynomial.
std::optional<std::set<Var>> multilinear_variables(const NcPoly& p);

inline bool is_multilinear(const NcPoly& p) {
    return multilinear_variables(p).has_value();
}

/// Homomorphic image under x_i -> sigma(i). sigma must cover every
/// variable of p (std::invalid_argument otherwise).
NcPoly substitute(const NcPoly& p, const std::map<Var, NcPoly>& sigma);

/// Letter-wise variable renaming. Variables absent from the map are kept;
/// the renaming must be injective on the variables of p.
NcPoly rename_variables(const NcPoly& p, const std::map<Var, Var>& renaming);

/// Canonical text form: terms in ascending degree-lex order, runs of equal
/// letters as powers, e.g. "1/2*x1^2 - x2*x1". parse_poly round-trips it.
std::string format_poly(const NcPoly& p);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

/// Surface grammar (whitespace-insensitive):
///   poly     := ('-')? term (('+' | '-') term)*
///   term     := (rational '*')? factor ('*' factor)*  |  rational
///   factor   := atom ('^' nat)?
///   atom     := 'x' nat | '(' poly ')' | '[' poly ',' poly ']' | 'St(' nat ')'
///   rational := ('-')? nat ('/' nat)?
/// '[p,q]' is the commutator, 'St(m)' the standard polynomial.
NcPoly parse_poly(std::string_view text);

}  // namespace piq

#endif
