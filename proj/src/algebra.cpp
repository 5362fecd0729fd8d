#include "piq/algebra.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace piq {

namespace {

std::vector<Rat> multiply_sparse(const StructureAlgebra& a,
                                 const std::vector<std::pair<int, Rat>>& x,
                                 const std::vector<std::pair<int, Rat>>& y) {
    std::vector<Rat> out(a.dim(), Rat(0));
    Rat tmp;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) {
            tmp = ci * cj;
            for (const auto& entry : a.cell(i, j)) out[entry.k] += tmp * entry.c;
        }
    return out;
}

std::vector<std::pair<int, Rat>> sparsify(const std::vector<Rat>& v) {
    std::vector<std::pair<int, Rat>> s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!rat_is_zero(v[i])) s.emplace_back(i, v[i]);
    return s;
}

}  // namespace

StructureAlgebra::StructureAlgebra(int n, std::vector<Rat> gamma,
                                   std::optional<std::vector<Rat>> unit,
                                   std::string label)
    : n_(n), unit_(std::move(unit)), label_(std::move(label)) {
    if (n <= 0) throw std::invalid_argument("algebra dimension must be positive");
    const std::size_t expected =
        static_cast<std::size_t>(n) * n * static_cast<std::size_t>(n);
    if (gamma.size() != expected)
        throw std::invalid_argument("structure constant array has wrong size");
    table_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& cell = table_[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < n; ++k) {
                Rat& g = gamma[(static_cast<std::size_t>(i) * n + j) * n + k];
                if (!rat_is_zero(g)) cell.push_back({k, std::move(g)});
            }
        }

    // Associativity on all basis triples.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& eij = cell(i, j);
            for (int k = 0; k < n; ++k) {
                std::vector<Rat> left(n, Rat(0));
                for (const auto& [l, c] : eij)
                    for (const auto& entry : cell(l, k)) left[entry.k] += c * entry.c;
                std::vector<Rat> right(n, Rat(0));
                for (const auto& [l, c] : cell(j, k))
                    for (const auto& entry : cell(i, l)) right[entry.k] += c * entry.c;
                if (left != right)
                    throw std::invalid_argument(
                        "structure constants are not associative at basis triple (" +
                        std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + ")");
            }
        }

    if (unit_) {
        if (static_cast<int>(unit_->size()) != n)
            throw std::invalid_argument("unit coordinate tuple has wrong length");
        auto u = sparsify(*unit_);
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> ei(n, Rat(0));
            ei[i] = 1;
            if (multiply_sparse(*this, u, {{i, Rat(1)}}) != ei ||
                multiply_sparse(*this, {{i, Rat(1)}}, u) != ei)
                throw std::invalid_argument("claimed unit is not a unit at e" +
                                            std::to_string(i + 1));
        }
    }
}

Rat StructureAlgebra::gamma(int i, int j, int k) const {
    for (const auto& entry : cell(i, j))
        if (entry.k == k) return entry.c;
    return Rat(0);
}

const std::vector<Rat>& StructureAlgebra::unit_coords() const {
    if (!unit_) throw std::invalid_argument("algebra has no unit");
    return *unit_;
}

std::vector<Rat> StructureAlgebra::multiply_coords(const std::vector<Rat>& a,
                                                   const std::vector<Rat>& b) const {
    if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_)
        throw std::invalid_argument("coordinate tuple has wrong length");
    return multiply_sparse(*this, sparsify(a), sparsify(b));
}

Element::Element(const StructureAlgebra& algebra, std::vector<Rat> coords)
    : alg_(&algebra), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != algebra.dim())
        throw std::invalid_argument("coordinate tuple has wrong length");
}

bool Element::is_zero() const {
    for (const Rat& c : coords_)
        if (!rat_is_zero(c)) return false;
    return true;
}

void Element::check_same(const Element& o) const {
    if (alg_ != o.alg_)
        throw std::invalid_argument("elements belong to different algebras");
}

Element Element::operator+(const Element& o) const {
    check_same(o);
    std::vector<Rat> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return Element(*alg_, std::move(c));
}

Element Element::operator-(const Element& o) const {
    check_same(o);
    std::vector<Rat> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return Element(*alg_, std::move(c));
}

Element Element::operator*(const Element& o) const {
    check_same(o);
    return Element(*alg_, alg_->multiply_coords(coords_, o.coords_));
}

Element Element::operator*(const Rat& s) const {
    std::vector<Rat> c = coords_;
    for (Rat& x : c) x *= s;
    return Element(*alg_, std::move(c));
}

Element Element::operator-() const { return *this * Rat(-1); }

bool Element::operator==(const Element& o) const {
    return alg_ == o.alg_ && coords_ == o.coords_;
}

std::string Element::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ", ";
        os << piq::to_string(coords_[i]);
    }
    os << ")";
    return os.str();
}

Element basis_element(const StructureAlgebra& a, int i) {
    if (i < 0 || i >= a.dim()) throw std::invalid_argument("basis index out of range");
    std::vector<Rat> c(a.dim(), Rat(0));
    c[i] = 1;
    return Element(a, std::move(c));
}

Element zero_element(const StructureAlgebra& a) {
    return Element(a, std::vector<Rat>(a.dim(), Rat(0)));
}

Element unit_element(const StructureAlgebra& a) {
    return Element(a, a.unit_coords());
}

StructureAlgebra matrix_algebra(int k) {
    if (k <= 0) throw std::invalid_argument("matrix size must be positive");
    const int n = k * k;  // basis e_rs at index r*k + s (0-based)
    std::vector<Rat> gamma(static_cast<std::size_t>(n) * n * n, Rat(0));
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t)
                for (int u = 0; u < k; ++u) {
                    if (s != t) continue;
                    int i = r * k + s, j = t * k + u, target = r * k + u;
                    gamma[(static_cast<std::size_t>(i) * n + j) * n + target] = 1;
                }
    std::vector<Rat> unit(n, Rat(0));
    for (int r = 0; r < k; ++r) unit[r * k + r] = 1;
    return StructureAlgebra(n, std::move(gamma), std::move(unit),
                            "matn:" + std::to_string(k));
}

StructureAlgebra quaternion_algebra() {
    // Basis 1, i, j, k with i^2 = j^2 = -1, ij = -ji = k.
    const int n = 4;
    std::vector<Rat> gamma(n * n * n, Rat(0));
    auto set = [&](int i, int j, int k, long v) {
        gamma[(static_cast<std::size_t>(i) * n + j) * n + k] = v;
    };
    // 1 * x = x * 1 = x
    for (int i = 0; i < 4; ++i) {
        set(0, i, i, 1);
        if (i) set(i, 0, i, 1);
    }
    set(1, 1, 0, -1);  // i*i = -1
    set(2, 2, 0, -1);  // j*j = -1
    set(3, 3, 0, -1);  // k*k = -1
    set(1, 2, 3, 1);   // ij = k
    set(2, 1, 3, -1);  // ji = -k
    set(2, 3, 1, 1);   // jk = i
    set(3, 2, 1, -1);  // kj = -i
    set(3, 1, 2, 1);   // ki = j
    set(1, 3, 2, -1);  // ik = -j
    std::vector<Rat> unit(n, Rat(0));
    unit[0] = 1;
    return StructureAlgebra(n, std::move(gamma), std::move(unit), "quaternion");
}

StructureAlgebra zero_mult_algebra(int k) {
    if (k <= 0) throw std::invalid_argument("dimension must be positive");
    std::vector<Rat> gamma(static_cast<std::size_t>(k) * k * k, Rat(0));
    return StructureAlgebra(k, std::move(gamma), std::nullopt,
                            "zeromult:" + std::to_string(k));
}

StructureAlgebra upper_triangular_algebra(int k) {
    if (k <= 0) throw std::invalid_argument("matrix size must be positive");
    // Basis e_rs for r <= s, ordered row-major.
    std::vector<std::pair<int, int>> basis;
    for (int r = 0; r < k; ++r)
        for (int s = r; s < k; ++s) basis.emplace_back(r, s);
    const int n = static_cast<int>(basis.size());
    auto index_of = [&](int r, int s) {
        for (int i = 0; i < n; ++i)
            if (basis[i] == std::make_pair(r, s)) return i;
        return -1;
    };
    std::vector<Rat> gamma(static_cast<std::size_t>(n) * n * n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [r, s] = basis[i];
            auto [t, u] = basis[j];
            if (s != t) continue;
            gamma[(static_cast<std::size_t>(i) * n + j) * n + index_of(r, u)] = 1;
        }
    std::vector<Rat> unit(n, Rat(0));
    for (int r = 0; r < k; ++r) unit[index_of(r, r)] = 1;
    return StructureAlgebra(n, std::move(gamma), std::move(unit),
                            "uppertri:" + std::to_string(k));
}

StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
    const int na = a.dim(), nb = b.dim(), n = na + nb;
    std::vector<Rat> gamma(static_cast<std::size_t>(n) * n * n, Rat(0));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (const auto& e : a.cell(i, j))
                gamma[(static_cast<std::size_t>(i) * n + j) * n + e.k] = e.c;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            for (const auto& e : b.cell(i, j))
                gamma[(static_cast<std::size_t>(na + i) * n + (na + j)) * n +
                      (na + e.k)] = e.c;
    std::optional<std::vector<Rat>> unit;
    if (a.has_unit() && b.has_unit()) {
        unit.emplace(n, Rat(0));
        for (int i = 0; i < na; ++i) (*unit)[i] = a.unit_coords()[i];
        for (int i = 0; i < nb; ++i) (*unit)[na + i] = b.unit_coords()[i];
    }
    return StructureAlgebra(n, std::move(gamma), std::move(unit),
                            "sum(" + a.label() + "," + b.label() + ")");
}

StructureAlgebra parse_algebra(const std::string& text, std::string label) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::optional<std::vector<Rat>> unit;
    std::vector<Rat> gamma;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("algebra file line " + std::to_string(lineno) +
                                    ": " + why);
    };
    auto read_coords = [&](std::istringstream& ls, int count) {
        std::vector<Rat> c;
        std::string tok;
        while (ls >> tok) c.push_back(parse_rational(tok));
        if (static_cast<int>(c.size()) != count)
            fail("expected " + std::to_string(count) + " coordinates, got " +
                 std::to_string(c.size()));
        return c;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "dim") {
            if (n != -1) fail("duplicate dim line");
            if (!(ls >> n) || n <= 0) fail("bad dimension");
            gamma.assign(static_cast<std::size_t>(n) * n * n, Rat(0));
        } else if (head == "unit") {
            if (n == -1) fail("unit before dim");
            if (unit) fail("duplicate unit line");
            unit = read_coords(ls, n);
        } else if (head == "e") {
            if (n == -1) fail("product before dim");
            int i, j;
            char colon;
            if (!(ls >> i >> j >> colon) || colon != ':') fail("expected 'e i j :'");
            if (i < 1 || i > n || j < 1 || j > n) fail("basis index out of range");
            auto c = read_coords(ls, n);
            for (int k = 0; k < n; ++k)
                gamma[(static_cast<std::size_t>(i - 1) * n + (j - 1)) * n + k] =
                    c[k];
        } else {
            fail("unknown directive '" + head + "'");
        }
    }
    if (n == -1) throw std::invalid_argument("algebra file: missing dim line");
    return StructureAlgebra(n, std::move(gamma), std::move(unit), std::move(label));
}

StructureAlgebra load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open algebra file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_algebra(os.str(), "file:" + path);
}

std::string algebra_to_text(const StructureAlgebra& a) {
    std::ostringstream os;
    os << "dim " << a.dim() << "\n";
    if (a.has_unit()) {
        os << "unit";
        for (const Rat& c : a.unit_coords()) os << " " << to_string(c);
        os << "\n";
    }
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const auto& cell = a.cell(i, j);
            if (cell.empty()) continue;
            std::vector<Rat> c(a.dim(), Rat(0));
            for (const auto& e : cell) c[e.k] = e.c;
            os << "e " << (i + 1) << " " << (j + 1) << " :";
            for (const Rat& x : c) os << " " << to_string(x);
            os << "\n";
        }
    return os.str();
}

std::vector<Element> center_basis(const StructureAlgebra& a) {
    const int n = a.dim();
    // Stack the systems z e_i - e_i z = 0 over all basis i; unknowns are
    // the coordinates of z.
    QMat sys(n * n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // contribution of z_j: e_j e_i - e_i e_j
            for (const auto& e : a.cell(j, i)) sys.at(i * n + e.k, j) += e.c;
            for (const auto& e : a.cell(i, j)) sys.at(i * n + e.k, j) -= e.c;
        }
    }
    std::vector<Element> basis;
    for (auto& v : kernel_basis(sys)) basis.emplace_back(a, std::move(v));
    return basis;
}

bool is_central(const StructureAlgebra& a) {
    if (!a.has_unit()) return false;
    return center_basis(a).size() == 1;  // the unit always lies in the center
}

std::optional<std::vector<std::pair<Element, Element>>>
express_one_as_ideal_combination(const StructureAlgebra& a, const Element& x) {
    if (!a.has_unit())
        throw std::invalid_argument("ideal decomposition needs a unital algebra");
    if (&x.algebra() != &a)
        throw std::invalid_argument("element belongs to a different algebra");
    if (x.is_zero()) throw std::invalid_argument("element is zero");
    const int n = a.dim();
    // Column (i,j) holds the coordinates of e_i x e_j; solving against the
    // unit answers "1 in span{e_i x e_j}", which equals the two-sided
    // ideal generated by x (bilinearity folds u x v into these products).
    QMat cols(n, n * n);
    for (int i = 0; i < n; ++i) {
        Element left = basis_element(a, i) * x;
        for (int j = 0; j < n; ++j) {
            Element prod = left * basis_element(a, j);
            for (int k = 0; k < n; ++k) cols.at(k, i * n + j) = prod.coords()[k];
        }
    }
    auto sol = solve(cols, a.unit_coords());
    if (!sol) return std::nullopt;
    std::vector<std::pair<Element, Element>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat& c = (*sol)[i * n + j];
            if (rat_is_zero(c)) continue;
            pairs.emplace_back(basis_element(a, i) * c, basis_element(a, j));
        }
    // Exact verification before returning.
    Element acc = zero_element(a);
    for (const auto& [u, v] : pairs) acc = acc + u * x * v;
    if (!(acc == unit_element(a)))
        throw std::logic_error("ideal decomposition failed verification");
    return pairs;
}

}  // namespace piq
