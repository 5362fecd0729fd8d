#ifndef PIQ_RATIONAL_HPP
#define PIQ_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace piq {

// Exact rational scalar. Always stored canonically (reduced, positive
// denominator); every constructor below canonicalizes.
using Rat = mpq_class;
using Int = mpz_class;

inline bool rat_is_zero(const Rat& q) { return mpq_sgn(q.get_mpq_t()) == 0; }

inline bool rat_is_one(const Rat& q) {
    return mpq_cmp_ui(q.get_mpq_t(), 1, 1) == 0;
}

inline bool rat_is_minus_one(const Rat& q) {
    return mpq_cmp_si(q.get_mpq_t(), -1, 1) == 0;
}

inline bool rat_is_integer(const Rat& q) {
    return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p" or "p/q" (q > 0 after reduction is enforced by
// canonicalization; "p/0" is rejected). Throws std::invalid_argument.
Rat parse_rational(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rat& q);

}  // namespace piq

#endif
