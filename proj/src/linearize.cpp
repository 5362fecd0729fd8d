#include "piq/linearize.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace piq {

NcPoly polarize(const NcPoly& p, Var i, Var j) {
    std::set<Var> vars = p.variables();
    if (!vars.count(i))
        throw std::invalid_argument("polarize: x" + std::to_string(i) +
                                    " does not occur");
    if (vars.count(j) || i == j)
        throw std::invalid_argument("polarize: x" + std::to_string(j) +
                                    " is not fresh");
    // Expand p(x_i -> x_i + x_j) - p - p(x_i -> x_j) monomial by monomial:
    // a monomial with d >= 1 occurrences of x_i turns into the sum of the
    // 2^d - 2 relabelings that use both x_i and x_j; one without x_i is
    // fixed by all three substitutions and survives as -m.
    NcPoly result;
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::size_t> positions;
        for (std::size_t k = 0; k < m.word.size(); ++k)
            if (m.word[k] == i) positions.push_back(k);
        const std::size_t d = positions.size();
        if (d < 1) {
            result += NcPoly::term(m, -c);
            continue;
        }
        if (d > 62)
            throw std::invalid_argument("polarize: degree too large");
        const std::uint64_t total = std::uint64_t(1) << d;
        for (std::uint64_t mask = 1; mask + 1 < total; ++mask) {
            Monomial nm = m;
            for (std::size_t b = 0; b < d; ++b)
                if (mask & (std::uint64_t(1) << b)) nm.word[positions[b]] = j;
            result += NcPoly::term(std::move(nm), c);
        }
    }
    return result;
}

namespace {

// Multidegree as a padded exponent vector for deterministic comparisons.
std::vector<int> exponent_vector(const std::map<Var, int>& multidegree, Var width) {
    std::vector<int> e(width, 0);
    for (const auto& [v, d] : multidegree) e[v - 1] = d;
    return e;
}

}  // namespace

std::vector<NcPoly> multihomogeneous_components(const NcPoly& p) {
    if (p.is_zero())
        throw std::invalid_argument("zero polynomial has no components");
    const Var width = p.max_variable();
    std::map<std::vector<int>, NcPoly> groups;
    for (const auto& [m, c] : p.terms())
        groups[exponent_vector(m.multidegree(), width)] += NcPoly::term(m, c);
    std::vector<std::pair<std::vector<int>, NcPoly>> items(groups.begin(), groups.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int x : a.first) ta += x;
        for (int x : b.first) tb += x;
        if (ta != tb) return ta > tb;
        return a.first > b.first;
    });
    std::vector<NcPoly> components;
    components.reserve(items.size());
    for (auto& [key, poly] : items) components.push_back(std::move(poly));
    return components;
}

NcPoly multilinearize(const NcPoly& p) {
    if (p.is_zero())
        throw std::invalid_argument("cannot multilinearize the zero polynomial");
    NcPoly f = multihomogeneous_components(p).front();
    for (;;) {
        // Lowest-index variable with degree >= 2 in some monomial.
        Var target = 0;
        for (const auto& [m, c] : f.terms()) {
            for (const auto& [v, d] : m.multidegree())
                if (d >= 2 && (target == 0 || v < target)) target = v;
        }
        if (target == 0) break;
        Var fresh = f.max_variable() + 1;
        f = polarize(f, target, fresh);
        if (f.is_zero())
            throw std::logic_error("polarization vanished unexpectedly");
    }
    // Renumber the surviving variables to 1..m, preserving order.
    std::set<Var> vars = f.variables();
    std::map<Var, Var> renaming;
    Var next = 1;
    for (Var v : vars) renaming[v] = next++;
    f = rename_variables(f, renaming);
    if (!is_multilinear(f))
        throw std::logic_error("multilinearization postcondition failed");
    return f;
}

}  // namespace piq
