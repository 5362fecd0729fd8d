#include "piq/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace piq {

Rat parse_rational(std::string_view text) {
    // Shape check first: mpq_class accepts whitespace and other bases,
    // we want exactly ('-')? digits ('/' digits)?.
    std::size_t i = 0;
    auto fail = [&](const char* why) {
        throw std::invalid_argument("malformed rational '" + std::string(text) +
                                    "': " + why);
    };
    if (text.empty()) fail("empty");
    if (text[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) fail("expected digits");
    if (i < text.size()) {
        if (text[i] != '/') fail("unexpected character");
        ++i;
        std::size_t den_digits = 0;
        std::size_t den_start = i;
        while (i < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++den_digits;
        }
        if (den_digits == 0 || i != text.size()) fail("bad denominator");
        Int den(std::string(text.substr(den_start)), 10);
        if (mpz_sgn(den.get_mpz_t()) == 0) fail("zero denominator");
    }
    Rat q(std::string(text), 10);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace piq
