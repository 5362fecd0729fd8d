#include "piq/kaplansky.hpp"

#include <algorithm>
#include <stdexcept>

namespace piq {

bool is_central_simple(const StructureAlgebra& alg) {
    if (!alg.has_unit())
        throw std::invalid_argument("central simplicity test needs a unital algebra");
    return mult_algebra_dim(alg) == alg.dim() * alg.dim();
}

MartindaleReport verify_martindale(const StructureAlgebra& alg,
                                   const MultOperator::Pairs& lhs,
                                   const MultOperator::Pairs& rhs) {
    MartindaleReport report;
    if (!alg.has_unit() || !is_central_simple(alg)) {
        report.status = MartindaleStatus::NotCentralSimple;
        report.detail = "algebra is not central simple";
        return report;
    }
    const int n = alg.dim();
    RowSpace left_span(n);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (!left_span.add(lhs[i].first.coords())) {
            report.status = MartindaleStatus::DependentLeftElements;
            report.detail = "left element " + std::to_string(i + 1) +
                            " depends on its predecessors";
            return report;
        }
    }
    QMat op_lhs(n, n), op_rhs(n, n);
    for (const auto& [a, b] : lhs)
        op_lhs += left_mult_matrix(alg, a) * right_mult_matrix(alg, b);
    for (const auto& [c, d] : rhs)
        op_rhs += left_mult_matrix(alg, c) * right_mult_matrix(alg, d);
    if (!(op_lhs == op_rhs)) {
        report.status = MartindaleStatus::OperatorMismatch;
        report.detail = "the two operator presentations differ";
        return report;
    }
    QMat d_cols(n, static_cast<int>(rhs.size()));
    for (std::size_t j = 0; j < rhs.size(); ++j)
        for (int r = 0; r < n; ++r)
            d_cols.at(r, static_cast<int>(j)) = rhs[j].second.coords()[r];
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        auto expansion = solve(d_cols, lhs[i].second.coords());
        if (!expansion) {
            // Cannot happen when the preconditions hold; report it as what
            // it is: evidence of a bug, not a mathematical result.
            report.status = MartindaleStatus::SpanCounterexample;
            report.counterexample_index = static_cast<int>(i);
            report.detail = "b_" + std::to_string(i + 1) +
                            " is not in the span of the d_j (implementation bug)";
            return report;
        }
        report.expansion.push_back(std::move(*expansion));
    }
    return report;
}

MultOperator::Pairs express_over_basis_pairs(const StructureAlgebra& alg,
                                             const MultOperator& op) {
    const int n = alg.dim();
    QMat sys(n * n, n * n);
    for (int i = 0; i < n; ++i) {
        QMat li = left_mult_matrix(alg, basis_element(alg, i));
        for (int j = 0; j < n; ++j) {
            QMat prod = li * right_mult_matrix(alg, basis_element(alg, j));
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    sys.at(r * n + c, i * n + j) = prod.at(r, c);
        }
    }
    std::vector<Rat> flat(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) flat[r * n + c] = op.matrix().at(r, c);
    auto sol = solve(sys, flat);
    if (!sol)
        throw std::invalid_argument(
            "operator lies outside the span of basis product operators");
    MultOperator::Pairs pairs;
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> b(n, Rat(0));
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            b[j] = (*sol)[i * n + j];
            nonzero = nonzero || !rat_is_zero(b[j]);
        }
        if (nonzero) pairs.emplace_back(basis_element(alg, i), Element(alg, std::move(b)));
    }
    if (pairs.empty() && !op.is_zero())
        throw std::logic_error("nonzero operator produced an empty presentation");
    return pairs;
}

Element noncommuting_witness(const StructureAlgebra& alg, const Element& b1,
                             const Element& b2) {
    if (!is_central_simple(alg))
        throw std::invalid_argument("witness search needs a central simple algebra");
    RowSpace span(alg.dim());
    span.add(b1.coords());
    if (!span.add(b2.coords())) {
        std::string detail = b1.is_zero() ? "b1 = 0" : "b2 is a multiple of b1";
        throw std::invalid_argument("b1, b2 are linearly dependent (" + detail + ")");
    }
    for (int k = 0; k < alg.dim(); ++k) {
        Element c = basis_element(alg, k);
        if (!(b1 * c * b2 == b2 * c * b1)) return c;
    }
    // Bilinearity would extend commuting basis witnesses to all of A,
    // contradicting the span theorem for independent b1, b2.
    throw std::logic_error("no basis witness found; this cannot happen");
}

std::pair<NcPoly, NcPoly> before_after_split(const NcPoly& f, Var i, Var j) {
    auto vars = multilinear_variables(f);
    if (!vars) throw std::invalid_argument("split needs a multilinear polynomial");
    if (i == j || !vars->count(i) || !vars->count(j))
        throw std::invalid_argument("split needs two distinct variables of f");
    NcPoly fi, fj;
    for (const auto& [m, c] : f.terms()) {
        std::size_t pi = 0, pj = 0;
        for (std::size_t p = 0; p < m.word.size(); ++p) {
            if (m.word[p] == i) pi = p;
            if (m.word[p] == j) pj = p;
        }
        if (pi < pj)
            fi += NcPoly::term(m, c);
        else
            fj += NcPoly::term(m, c);
    }
    return {fi, fj};
}

namespace {

Element eval_word(const StructureAlgebra& alg, const std::vector<Var>& word,
                  std::size_t begin, std::size_t end,
                  const std::map<Var, Element>& values) {
    Element acc = unit_element(alg);
    for (std::size_t p = begin; p < end; ++p) acc = acc * values.at(word[p]);
    return acc;
}

}  // namespace

FiniteRankWitness finite_rank_witness(const StructureAlgebra& alg, const NcPoly& f) {
    if (!is_central_simple(alg))
        throw std::invalid_argument("witness extraction needs a central simple algebra");
    auto vars_opt = multilinear_variables(f);
    if (!vars_opt)
        throw std::invalid_argument("witness extraction needs a multilinear polynomial");
    if (vars_opt->size() < 2)
        throw std::invalid_argument("witness extraction needs degree >= 2");
    if (!is_identity_multilinear(alg, f).identity)
        throw std::invalid_argument("polynomial is not an identity of the algebra");

    const std::vector<Var> vars(vars_opt->begin(), vars_opt->end());
    const int n = alg.dim();
    const int max_descent = static_cast<int>(vars.size() * (vars.size() - 1) / 2);

    NcPoly g = f, gi, gj;
    Var vi = 0, vj = 0;
    int descent = 0;
    for (;;) {
        bool found = false;
        bool have_descent = false;
        NcPoly descent_part;
        for (std::size_t a = 0; a < vars.size() && !found; ++a) {
            for (std::size_t b = a + 1; b < vars.size(); ++b) {
                auto [pa, pb] = before_after_split(g, vars[a], vars[b]);
                if (pa.is_zero() || pb.is_zero()) continue;  // order already fixed
                const bool ida = is_identity_multilinear(alg, pa).identity;
                const bool idb = is_identity_multilinear(alg, pb).identity;
                if (!ida && !idb) {
                    vi = vars[a];
                    vj = vars[b];
                    gi = std::move(pa);
                    gj = std::move(pb);
                    found = true;
                    break;
                }
                if (ida && idb && !have_descent) {
                    // Both halves are identities: fix the order of this pair
                    // by replacing g with the (nonzero) before-part.
                    descent_part = std::move(pa);
                    have_descent = true;
                }
            }
        }
        if (found) break;
        if (!have_descent)
            throw std::logic_error("pair search failed; preconditions violated");
        g = std::move(descent_part);
        if (++descent > max_descent)
            throw std::logic_error("descent exceeded its bound");
    }

    // First basis assignment (odometer order) with g_i(u) != 0.
    WordEvaluator ev(alg, gi);
    const std::vector<Var>& slots = ev.slots();
    const int m = static_cast<int>(slots.size());
    std::vector<int> tuple(m, 0);
    std::vector<SparseVec> assignment(m);
    for (int s = 0; s < m; ++s) assignment[s].emplace_back(0, Rat(1));
    bool hit = false;
    for (;;) {
        if (!ev.vanishes(assignment)) {
            hit = true;
            break;
        }
        int pos = m - 1;
        while (pos >= 0 && tuple[pos] == n - 1) {
            tuple[pos] = 0;
            assignment[pos][0].first = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[pos];
        assignment[pos][0].first = tuple[pos];
    }
    if (!hit) throw std::logic_error("no nonvanishing assignment found");

    std::map<Var, Element> values;
    for (int s = 0; s < m; ++s) values.emplace(slots[s], basis_element(alg, tuple[s]));

    // Freeze everything except x = x_{vi}, y = x_{vj}. Each monomial of
    // g_i reads m x_{vi} m' x_{vj} m'' and becomes a_i x T_i(y) with
    // a_i = coeff * m(u), T_i = L_{m'(u)} R_{m''(u)}; each monomial of g_j
    // reads m x_{vj} m' x_{vi} m'' and moves to the right-hand side as
    // S_j(y) x d_j with S_j(y) = -coeff * m(u) y m'(u), d_j = m''(u).
    struct LeftTerm {
        Element a, t_left, t_right;
    };
    struct RightTerm {
        Element s_left, s_right, d;
    };
    std::vector<LeftTerm> lterms;
    std::vector<RightTerm> rterms;
    for (const auto& [mon, c] : gi.terms()) {
        std::size_t p = 0, q = 0;
        for (std::size_t t = 0; t < mon.word.size(); ++t) {
            if (mon.word[t] == vi) p = t;
            if (mon.word[t] == vj) q = t;
        }
        Element a = eval_word(alg, mon.word, 0, p, values) * c;
        Element tl = eval_word(alg, mon.word, p + 1, q, values);
        Element tr = eval_word(alg, mon.word, q + 1, mon.word.size(), values);
        if (a.is_zero() || tl.is_zero() || tr.is_zero()) continue;
        lterms.push_back({std::move(a), std::move(tl), std::move(tr)});
    }
    for (const auto& [mon, c] : gj.terms()) {
        std::size_t p = 0, q = 0;
        for (std::size_t t = 0; t < mon.word.size(); ++t) {
            if (mon.word[t] == vi) p = t;
            if (mon.word[t] == vj) q = t;
        }
        Element sl = eval_word(alg, mon.word, 0, q, values) * (-c);
        Element sr = eval_word(alg, mon.word, q + 1, p, values);
        Element d = eval_word(alg, mon.word, p + 1, mon.word.size(), values);
        if (sl.is_zero() || sr.is_zero() || d.is_zero()) continue;
        rterms.push_back({std::move(sl), std::move(sr), std::move(d)});
    }

    // The rewriting must reproduce the frozen identity on all basis pairs.
    for (int xp = 0; xp < n; ++xp)
        for (int yq = 0; yq < n; ++yq) {
            Element x = basis_element(alg, xp), y = basis_element(alg, yq);
            Element acc = zero_element(alg);
            for (const auto& t : lterms) acc = acc + t.a * x * (t.t_left * y * t.t_right);
            for (const auto& t : rterms) acc = acc - (t.s_left * y * t.s_right) * x * t.d;
            if (!acc.is_zero())
                throw std::logic_error("frozen identity failed to verify");
        }

    // Reduce the a_i to an independent set, folding the dropped terms'
    // operators into the selected ones.
    RowSpace span(n);
    std::vector<Element> selected;
    std::vector<MultOperator> w_ops;
    for (const auto& t : lterms) {
        if (span.add(t.a.coords())) {
            selected.push_back(t.a);
            w_ops.push_back(MultOperator::from_pairs(alg, {{t.t_left, t.t_right}}));
            continue;
        }
        QMat cols(n, static_cast<int>(selected.size()));
        for (std::size_t k = 0; k < selected.size(); ++k)
            for (int r = 0; r < n; ++r)
                cols.at(r, static_cast<int>(k)) = selected[k].coords()[r];
        auto lambda = solve(cols, t.a.coords());
        if (!lambda) throw std::logic_error("dependent element failed to expand");
        for (std::size_t k = 0; k < selected.size(); ++k)
            if (!rat_is_zero((*lambda)[k]))
                w_ops[k] = w_ops[k] + MultOperator::from_pairs(
                                          alg, {{t.t_left * (*lambda)[k], t.t_right}});
    }

    int first_nonzero = -1;
    for (std::size_t k = 0; k < w_ops.size(); ++k)
        if (!w_ops[k].is_zero()) {
            first_nonzero = static_cast<int>(k);
            break;
        }
    if (first_nonzero < 0)
        throw std::logic_error("all folded operators vanished; this cannot happen");

    FiniteRankWitness witness{std::move(w_ops[first_nonzero]), {}, vi, vj,
                              tuple,                           slots, descent};
    for (const auto& t : rterms) witness.D.push_back(t.d);

    // Postconditions, checked exactly: V != 0 and range(V) inside span(D).
    if (witness.V.is_zero()) throw std::logic_error("witness operator is zero");
    RowSpace d_span(n);
    for (const auto& d : witness.D) d_span.add(d.coords());
    for (int c = 0; c < n; ++c)
        if (!d_span.contains(witness.V.matrix().col(c)))
            throw std::logic_error("witness range escapes span(D)");
    return witness;
}

}  // namespace piq
