#include "piq/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace piq {

Monomial::Monomial(std::vector<Var> w) : word(std::move(w)) {
    for (Var v : word)
        if (v == 0) throw std::invalid_argument("variable index 0 is invalid");
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.word.reserve(word.size() + o.word.size());
    r.word.insert(r.word.end(), word.begin(), word.end());
    r.word.insert(r.word.end(), o.word.begin(), o.word.end());
    return r;
}

std::map<Var, int> Monomial::multidegree() const {
    std::map<Var, int> d;
    for (Var v : word) ++d[v];
    return d;
}

std::string Monomial::to_string() const {
    if (word.empty()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < word.size()) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        if (!first) os << "*";
        os << "x" << word[i];
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

NcPoly::NcPoly(const Rat& constant) {
    if (!rat_is_zero(constant)) terms_.emplace(Monomial::one(), constant);
}

NcPoly NcPoly::variable(Var i) {
    if (i == 0) throw std::invalid_argument("variable index 0 is invalid");
    NcPoly p;
    p.terms_.emplace(Monomial({i}), Rat(1));
    return p;
}

NcPoly NcPoly::term(Monomial m, Rat coefficient) {
    NcPoly p;
    if (!rat_is_zero(coefficient)) p.terms_.emplace(std::move(m), std::move(coefficient));
    return p;
}

int NcPoly::degree() const {
    if (terms_.empty()) return kZeroDegree;
    // Map order is degree-lex, so the last key has maximal degree.
    return terms_.rbegin()->first.degree();
}

Rat NcPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

std::set<Var> NcPoly::variables() const {
    std::set<Var> vs;
    for (const auto& [m, c] : terms_) vs.insert(m.word.begin(), m.word.end());
    return vs;
}

Var NcPoly::max_variable() const {
    Var mx = 0;
    for (const auto& [m, c] : terms_)
        for (Var v : m.word) mx = std::max(mx, v);
    return mx;
}

void NcPoly::add_term(const Monomial& m, const Rat& c) {
    if (rat_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (rat_is_zero(it->second)) terms_.erase(it);
    }
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
    NcPoly r = *this;
    r += o;
    return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
    NcPoly r = *this;
    r -= o;
    return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
    NcPoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

NcPoly NcPoly::operator-() const {
    NcPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

NcPoly NcPoly::operator*(const Rat& s) const {
    NcPoly r;
    if (rat_is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
}

NcPoly commutator(const NcPoly& p, const NcPoly& q) { return p * q - q * p; }

NcPoly standard_poly(unsigned m) {
    if (m == 0) throw std::invalid_argument("standard polynomial needs degree >= 1");
    std::vector<Var> perm(m);
    std::iota(perm.begin(), perm.end(), 1u);
    NcPoly p;
    // Parity via cycle decomposition of each permutation.
    std::vector<bool> seen(m);
    do {
        std::fill(seen.begin(), seen.end(), false);
        int transpositions = 0;
        for (unsigned s = 0; s < m; ++s) {
            if (seen[s]) continue;
            unsigned len = 0, t = s;
            while (!seen[t]) {
                seen[t] = true;
                t = perm[t] - 1;
                ++len;
            }
            transpositions += static_cast<int>(len) - 1;
        }
        p += NcPoly::term(Monomial(perm), Rat(transpositions % 2 == 0 ? 1 : -1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p;
}

std::optional<std::set<Var>> multilinear_variables(const NcPoly& p) {
    if (p.is_zero())
        throw std::invalid_argument("multilinearity is undefined for the zero polynomial");
    std::set<Var> vars;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::set<Var> support(m.word.begin(), m.word.end());
        if (support.size() != m.word.size()) return std::nullopt;  // repeated letter
        if (first) {
            vars = std::move(support);
            first = false;
        } else if (support != vars) {
            return std::nullopt;
        }
    }
    return vars;
}

NcPoly substitute(const NcPoly& p, const std::map<Var, NcPoly>& sigma) {
    NcPoly result;
    for (const auto& [m, c] : p.terms()) {
        NcPoly prod{Rat(1)};
        for (Var v : m.word) {
            auto it = sigma.find(v);
            if (it == sigma.end())
                throw std::invalid_argument("substitution misses variable x" +
                                            std::to_string(v));
            prod = prod * it->second;
            if (prod.is_zero()) break;
        }
        result += prod * c;
    }
    return result;
}

NcPoly rename_variables(const NcPoly& p, const std::map<Var, Var>& renaming) {
    // Injectivity on the affected variable set guards against monomial
    // collisions that renaming is not meant to create.
    std::set<Var> vars = p.variables();
    std::set<Var> images;
    for (Var v : vars) {
        auto it = renaming.find(v);
        Var image = it == renaming.end() ? v : it->second;
        if (image == 0) throw std::invalid_argument("variable index 0 is invalid");
        if (!images.insert(image).second)
            throw std::invalid_argument("renaming is not injective");
    }
    NcPoly r;
    for (const auto& [m, c] : p.terms()) {
        Monomial nm = m;
        for (Var& v : nm.word) {
            auto it = renaming.find(v);
            if (it != renaming.end()) v = it->second;
        }
        r += NcPoly::term(std::move(nm), c);
    }
    return r;
}

std::string format_poly(const NcPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = mpq_sgn(c.get_mpq_t()) < 0;
        Rat mag = abs(c);
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << to_string(mag);
        } else if (rat_is_one(mag)) {
            os << m.to_string();
        } else {
            os << to_string(mag) << "*" << m.to_string();
        }
    }
    return os.str();
}

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NcPoly parse() {
        NcPoly p = parse_poly();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    unsigned long parse_nat() {
        skip_ws();
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a number");
        unsigned long value = 0;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (value > (std::numeric_limits<unsigned long>::max() - 9) / 10)
                fail("number too large");
            value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            ++pos_;
        }
        return value;
    }

    Rat parse_rational_token(bool negative) {
        unsigned long num = parse_nat();
        Rat q(static_cast<unsigned long>(num));
        if (accept('/')) {
            std::size_t den_pos = pos_;
            unsigned long den = parse_nat();
            if (den == 0) {
                pos_ = den_pos;
                fail("zero denominator");
            }
            q /= Rat(static_cast<unsigned long>(den));
        }
        if (negative) q = -q;
        q.canonicalize();
        return q;
    }

    NcPoly parse_poly() {
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        NcPoly p = parse_term();
        if (negative) p = -p;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                p += parse_term();
            } else if (c == '-') {
                ++pos_;
                p -= parse_term();
            } else {
                break;
            }
        }
        return p;
    }

    bool at_rational() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
    }

    NcPoly parse_term() {
        NcPoly p{Rat(1)};
        bool have_factor = false;
        if (at_rational()) {
            bool negative = accept('-');
            p = NcPoly(parse_rational_token(negative));
            have_factor = true;
            if (!accept('*')) return p;  // bare rational term
            p = p * parse_factor();
        } else {
            p = parse_factor();
            have_factor = true;
        }
        while (accept('*')) p = p * parse_factor();
        if (!have_factor) fail("expected a term");
        return p;
    }

    NcPoly parse_factor() {
        NcPoly base = parse_atom();
        if (accept('^')) {
            unsigned long e = parse_nat();
            NcPoly r{Rat(1)};
            for (unsigned long k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }

    NcPoly parse_atom() {
        char c = peek();
        if (c == 'x') {
            ++pos_;
            std::size_t idx_pos = pos_;
            unsigned long idx = parse_nat();
            if (idx == 0) {
                pos_ = idx_pos;
                fail("variable index 0 is invalid");
            }
            if (idx > std::numeric_limits<Var>::max()) {
                pos_ = idx_pos;
                fail("variable index too large");
            }
            return NcPoly::variable(static_cast<Var>(idx));
        }
        if (c == 'S') {
            skip_ws();
            if (text_.substr(pos_, 2) != "St") fail("unknown symbol");
            pos_ += 2;
            expect('(');
            std::size_t m_pos = pos_;
            unsigned long m = parse_nat();
            if (m == 0) {
                pos_ = m_pos;
                fail("St needs degree >= 1");
            }
            expect(')');
            return standard_poly(static_cast<unsigned>(m));
        }
        if (accept('(')) {
            NcPoly p = parse_poly();
            expect(')');
            return p;
        }
        if (accept('[')) {
            NcPoly p = parse_poly();
            expect(',');
            NcPoly q = parse_poly();
            expect(']');
            return commutator(p, q);
        }
        fail("expected 'xN', 'St(', '(' or '['");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

NcPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace piq
