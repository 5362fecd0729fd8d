#include "piq/identity.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "piq/linearize.hpp"

namespace piq {

WordEvaluator::WordEvaluator(const StructureAlgebra& alg, const NcPoly& f)
    : alg_(&alg), constant_term_(0) {
    std::set<Var> vars = f.variables();
    slots_.assign(vars.begin(), vars.end());
    std::map<Var, int> slot_of;
    for (std::size_t s = 0; s < slots_.size(); ++s)
        slot_of[slots_[s]] = static_cast<int>(s);

    int max_depth = 0;
    for (const auto& [m, c] : f.terms()) {
        if (m.is_one()) {
            if (!alg.has_unit())
                throw std::invalid_argument(
                    "constant term needs a unital algebra to evaluate");
            constant_term_ = c;
            has_constant_ = true;
            continue;
        }
        max_depth = std::max(max_depth, m.degree());
        // Insert the word, sharing prefixes. parent == -1 denotes the root.
        int parent = -1;
        int node = -1;
        for (Var v : m.word) {
            const int slot = slot_of[v];
            const int head = parent == -1 ? root_first_child_
                                          : nodes_[parent].first_child;
            int cur = head;
            while (cur != -1 && nodes_[cur].slot != slot)
                cur = nodes_[cur].next_sibling;
            if (cur == -1) {
                nodes_.push_back(Node{slot, -1, head, Rat(0), false});
                cur = static_cast<int>(nodes_.size()) - 1;
                if (parent == -1)
                    root_first_child_ = cur;
                else
                    nodes_[parent].first_child = cur;
            }
            node = cur;
            parent = cur;
        }
        nodes_[node].terminal = true;
        nodes_[node].coeff = c;
    }
    levels_.resize(max_depth);
    for (auto& level : levels_) {
        level.coeff.assign(alg.dim(), Rat(0));
        level.mark.assign(alg.dim(), 0);
    }
    out_.assign(alg.dim(), Rat(0));
}

void WordEvaluator::multiply_into(Level& out, const Level& parent,
                                  const SparseVec& elem) {
    ++out.epoch;
    out.touched.clear();
    for (int i : parent.touched) {
        const Rat& ci = parent.coeff[i];
        for (const auto& [j, cj] : elem) {
            mpq_mul(tmp_.get_mpq_t(), ci.get_mpq_t(), cj.get_mpq_t());
            for (const auto& entry : alg_->cell(i, j)) {
                if (out.mark[entry.k] != out.epoch) {
                    out.mark[entry.k] = out.epoch;
                    out.coeff[entry.k] = 0;
                    out.touched.push_back(entry.k);
                }
                Rat& acc = out.coeff[entry.k];
                if (rat_is_one(entry.c)) {
                    acc += tmp_;
                } else {
                    mpq_mul(tmp2_.get_mpq_t(), tmp_.get_mpq_t(), entry.c.get_mpq_t());
                    acc += tmp2_;
                }
            }
        }
    }
    // Drop cancelled entries so children iterate true support only.
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.touched.size(); ++r)
        if (!rat_is_zero(out.coeff[out.touched[r]])) out.touched[w++] = out.touched[r];
    out.touched.resize(w);
}

void WordEvaluator::walk(int node, int depth, const std::vector<SparseVec>& assignment) {
    for (; node != -1; node = nodes_[node].next_sibling) {
        const Node& nd = nodes_[node];
        Level& level = levels_[depth];
        const SparseVec& elem = assignment[nd.slot];
        if (depth == 0) {
            ++level.epoch;
            level.touched.clear();
            for (const auto& [k, c] : elem) {
                if (rat_is_zero(c)) continue;
                level.mark[k] = level.epoch;
                level.coeff[k] = c;
                level.touched.push_back(k);
            }
        } else {
            multiply_into(level, levels_[depth - 1], elem);
        }
        if (level.touched.empty()) continue;  // zero product: prune subtree
        if (nd.terminal) {
            for (int k : level.touched) {
                mpq_mul(tmp_.get_mpq_t(), nd.coeff.get_mpq_t(),
                        level.coeff[k].get_mpq_t());
                out_[k] += tmp_;
            }
        }
        if (nd.first_child != -1) walk(nd.first_child, depth + 1, assignment);
    }
}

const std::vector<Rat>& WordEvaluator::eval(const std::vector<SparseVec>& assignment) {
    if (assignment.size() != slots_.size())
        throw std::invalid_argument("assignment size mismatch");
    for (Rat& x : out_) x = 0;
    if (has_constant_) {
        const auto& u = alg_->unit_coords();
        for (int k = 0; k < alg_->dim(); ++k)
            if (!rat_is_zero(u[k])) out_[k] += constant_term_ * u[k];
    }
    if (root_first_child_ != -1) walk(root_first_child_, 0, assignment);
    return out_;
}

bool WordEvaluator::vanishes(const std::vector<SparseVec>& assignment) {
    const std::vector<Rat>& v = eval(assignment);
    for (const Rat& x : v)
        if (!rat_is_zero(x)) return false;
    return true;
}

Element eval_poly(const StructureAlgebra& alg, const NcPoly& f,
                  const std::map<Var, Element>& sigma) {
    WordEvaluator ev(alg, f);
    std::vector<SparseVec> assignment(ev.slots().size());
    for (std::size_t s = 0; s < ev.slots().size(); ++s) {
        auto it = sigma.find(ev.slots()[s]);
        if (it == sigma.end())
            throw std::invalid_argument("assignment misses variable x" +
                                        std::to_string(ev.slots()[s]));
        if (&it->second.algebra() != &alg)
            throw std::invalid_argument("element belongs to a different algebra");
        const auto& coords = it->second.coords();
        for (int k = 0; k < alg.dim(); ++k)
            if (!rat_is_zero(coords[k])) assignment[s].emplace_back(k, coords[k]);
    }
    return Element(alg, ev.eval(assignment));
}

namespace {

// Sign-flip under every adjacent transposition of the variable set.
bool is_alternating(const NcPoly& f, const std::vector<Var>& vars) {
    for (std::size_t s = 0; s + 1 < vars.size(); ++s) {
        std::map<Var, Var> swap{{vars[s], vars[s + 1]}, {vars[s + 1], vars[s]}};
        if (rename_variables(f, swap) != -f) return false;
    }
    return true;
}

std::vector<SparseVec> basis_assignment(const std::vector<int>& tuple) {
    std::vector<SparseVec> a(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i)
        a[i].emplace_back(tuple[i], Rat(1));
    return a;
}

// Odometer scan of all n^m tuples with a fixed first coordinate. Returns
// the first failing tuple, if any. The assignment is updated in place.
std::optional<std::pair<std::vector<int>, std::vector<Rat>>> scan_block(
    WordEvaluator& ev, int n, int m, int first) {
    std::vector<int> tuple(m, 0);
    tuple[0] = first;
    auto assignment = basis_assignment(tuple);
    for (;;) {
        const std::vector<Rat>& v = ev.eval(assignment);
        bool zero = true;
        for (const Rat& x : v)
            if (!rat_is_zero(x)) {
                zero = false;
                break;
            }
        if (!zero) return std::make_pair(tuple, std::vector<Rat>(v));
        int pos = m - 1;
        while (pos >= 1 && tuple[pos] == n - 1) {
            tuple[pos] = 0;
            assignment[pos][0].first = 0;
            --pos;
        }
        if (pos < 1) return std::nullopt;  // never rolls the first coordinate
        ++tuple[pos];
        assignment[pos][0].first = tuple[pos];
    }
}

}  // namespace

MultilinearCheck is_identity_multilinear(const StructureAlgebra& alg,
                                         const NcPoly& f,
                                         const IdentityOptions& opts) {
    auto vars_opt = multilinear_variables(f);
    if (!vars_opt)
        throw std::invalid_argument("polynomial is not multilinear");
    std::vector<Var> vars(vars_opt->begin(), vars_opt->end());
    const int m = static_cast<int>(vars.size());
    const int n = alg.dim();
    MultilinearCheck result;

    if (m == 0) {
        // Nonzero constant: its value is coeff * unit.
        Element val = eval_poly(alg, f, {});
        result.identity = val.is_zero();
        if (!result.identity) result.value = val.coords();
        return result;
    }

    const bool alternating =
        opts.alternating_fast_path && m >= 2 && is_alternating(f, vars);
    result.alternating = alternating;

    if (alternating) {
        // Alternation kills tuples with repeats, and permuting a tuple only
        // flips the sign, so strictly increasing tuples decide everything.
        if (m > n) {
            result.identity = true;
            return result;
        }
        std::vector<std::vector<int>> combos;
        std::vector<int> combo(m);
        std::iota(combo.begin(), combo.end(), 0);
        for (;;) {
            combos.push_back(combo);
            int pos = m - 1;
            while (pos >= 0 && combo[pos] == n - m + pos) --pos;
            if (pos < 0) break;
            ++combo[pos];
            for (int q = pos + 1; q < m; ++q) combo[q] = combo[q - 1] + 1;
        }
        const int threads = std::max(1, opts.threads);
        if (threads == 1 || combos.size() < 2) {
            WordEvaluator ev(alg, f);
            for (const auto& c : combos) {
                auto assignment = basis_assignment(c);
                const std::vector<Rat>& v = ev.eval(assignment);
                bool zero = true;
                for (const Rat& x : v)
                    if (!rat_is_zero(x)) {
                        zero = false;
                        break;
                    }
                if (!zero) {
                    result.identity = false;
                    result.counterexample = c;
                    result.value.assign(v.begin(), v.end());
                    return result;
                }
            }
            result.identity = true;
            return result;
        }
        std::atomic<std::size_t> next{0}, best{combos.size()};
        std::vector<std::pair<std::vector<int>, std::vector<Rat>>> found(combos.size());
        auto worker = [&] {
            WordEvaluator ev(alg, f);
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= combos.size()) break;
                if (i > best.load()) continue;
                auto assignment = basis_assignment(combos[i]);
                const std::vector<Rat>& v = ev.eval(assignment);
                bool zero = true;
                for (const Rat& x : v)
                    if (!rat_is_zero(x)) {
                        zero = false;
                        break;
                    }
                if (!zero) {
                    found[i] = {combos[i], std::vector<Rat>(v.begin(), v.end())};
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        std::size_t b = best.load();
        if (b == combos.size()) {
            result.identity = true;
        } else {
            result.identity = false;
            result.counterexample = found[b].first;
            result.value = found[b].second;
        }
        return result;
    }

    // Exhaustive odometer scan over all n^m basis tuples, sharded by the
    // first coordinate. The reported counterexample is always the earliest
    // in odometer order, independent of the thread count.
    const int threads = std::max(1, std::min(opts.threads, n));
    if (threads == 1) {
        WordEvaluator ev(alg, f);
        for (int first = 0; first < n; ++first) {
            auto hit = scan_block(ev, n, m, first);
            if (hit) {
                result.identity = false;
                result.counterexample = hit->first;
                result.value = hit->second;
                return result;
            }
        }
        result.identity = true;
        return result;
    }
    std::atomic<int> next{0}, best{n};
    std::vector<std::optional<std::pair<std::vector<int>, std::vector<Rat>>>> found(n);
    auto worker = [&] {
        WordEvaluator ev(alg, f);
        for (;;) {
            int first = next.fetch_add(1);
            if (first >= n) break;
            if (first > best.load()) continue;
            auto hit = scan_block(ev, n, m, first);
            if (hit) {
                found[first] = std::move(hit);
                int cur = best.load();
                while (first < cur && !best.compare_exchange_weak(cur, first)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    int b = best.load();
    if (b == n) {
        result.identity = true;
    } else {
        result.identity = false;
        result.counterexample = found[b]->first;
        result.value = found[b]->second;
    }
    return result;
}

IdentityVerdict check_identity(const StructureAlgebra& alg, const NcPoly& f,
                               const IdentityOptions& opts) {
    if (f.is_zero())
        throw std::invalid_argument("identity test needs a nonzero polynomial");
    IdentityVerdict verdict;
    if (is_multilinear(f)) {
        verdict.detail = is_identity_multilinear(alg, f, opts);
        verdict.identity = verdict.detail.identity;
        if (!verdict.identity) verdict.failed_multilinear = f;
        return verdict;
    }
    // Over the rationals, f is an identity iff every multihomogeneous
    // component is, iff each component's full multilinearization is
    // (restitution recovers the component up to a nonzero factor).
    for (const NcPoly& component : multihomogeneous_components(f)) {
        NcPoly g = multilinearize(component);
        MultilinearCheck check = is_identity_multilinear(alg, g, opts);
        if (!check.identity) {
            verdict.identity = false;
            verdict.failed_multilinear = g;
            verdict.detail = std::move(check);
            return verdict;
        }
    }
    verdict.identity = true;
    return verdict;
}

bool is_identity(const StructureAlgebra& alg, const NcPoly& f,
                 const IdentityOptions& opts) {
    return check_identity(alg, f, opts).identity;
}

CentralPolyVerdict central_polynomial_verdict(const StructureAlgebra& alg,
                                              const NcPoly& f,
                                              const IdentityOptions& opts) {
    if (!alg.has_unit())
        throw std::invalid_argument("central polynomials need a unital algebra");
    if (f.is_zero())
        throw std::invalid_argument("central polynomial test needs a nonzero polynomial");
    const Var fresh = f.max_variable() + 1;
    NcPoly comm = commutator(f, NcPoly::variable(fresh));
    if (!comm.is_zero() && !is_identity(alg, comm, opts))
        return CentralPolyVerdict::NoncentralValue;
    if (is_identity(alg, f, opts)) return CentralPolyVerdict::IsIdentity;
    return CentralPolyVerdict::Central;
}

bool is_central_polynomial(const StructureAlgebra& alg, const NcPoly& f,
                           const IdentityOptions& opts) {
    return central_polynomial_verdict(alg, f, opts) == CentralPolyVerdict::Central;
}

namespace {

// Evaluates all m! permutation words at one basis tuple, sharing prefix
// products; fills n rows (one per coordinate) of length m! indexed by the
// lexicographic rank of the word.
class PermutationTableau {
  public:
    PermutationTableau(const StructureAlgebra& alg, int m)
        : alg_(&alg), m_(m), rows_(alg.dim(), std::vector<Rat>(factorial(m))) {
        factorials_.resize(m + 1);
        factorials_[0] = 1;
        for (int i = 1; i <= m; ++i) factorials_[i] = factorials_[i - 1] * i;
    }

    static std::size_t factorial(int m) {
        std::size_t f = 1;
        for (int i = 2; i <= m; ++i) f *= static_cast<std::size_t>(i);
        return f;
    }

    const std::vector<std::vector<Rat>>& fill(const std::vector<int>& tuple) {
        for (auto& row : rows_)
            for (Rat& x : row) x = 0;
        tuple_ = &tuple;
        used_.assign(m_, false);
        descend(0, 0, {});
        return rows_;
    }

  private:
    void descend(int depth, std::size_t index, const std::vector<Rat>& partial) {
        if (depth == m_) {
            for (int k = 0; k < alg_->dim(); ++k) rows_[k][index] = partial[k];
            return;
        }
        int rank = 0;
        for (int v = 0; v < m_; ++v) {
            if (used_[v]) continue;
            std::vector<Rat> next;
            if (depth == 0) {
                next.assign(alg_->dim(), Rat(0));
                next[(*tuple_)[v]] = 1;
            } else {
                next = right_multiply(partial, (*tuple_)[v]);
            }
            bool zero = true;
            for (const Rat& x : next)
                if (!rat_is_zero(x)) {
                    zero = false;
                    break;
                }
            std::size_t child_index =
                index + static_cast<std::size_t>(rank) * factorials_[m_ - 1 - depth];
            if (!zero) {
                used_[v] = true;
                descend(depth + 1, child_index, next);
                used_[v] = false;
            }
            ++rank;
        }
    }

    std::vector<Rat> right_multiply(const std::vector<Rat>& x, int basis) const {
        std::vector<Rat> out(alg_->dim(), Rat(0));
        for (int i = 0; i < alg_->dim(); ++i) {
            if (rat_is_zero(x[i])) continue;
            for (const auto& e : alg_->cell(i, basis)) out[e.k] += x[i] * e.c;
        }
        return out;
    }

    const StructureAlgebra* alg_;
    int m_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<std::size_t> factorials_;
    const std::vector<int>* tuple_ = nullptr;
    std::vector<bool> used_;
};

std::vector<Monomial> permutation_words(unsigned m) {
    std::vector<Var> perm(m);
    std::iota(perm.begin(), perm.end(), 1u);
    std::vector<Monomial> words;
    do {
        words.push_back(Monomial(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return words;
}

}  // namespace

std::vector<NcPoly> identity_space(const StructureAlgebra& alg, unsigned m) {
    if (m == 0) throw std::invalid_argument("degree must be >= 1");
    const int n = alg.dim();
    const std::size_t cols = PermutationTableau::factorial(static_cast<int>(m));
    RowSpace constraints(static_cast<int>(cols));
    PermutationTableau tableau(alg, static_cast<int>(m));
    std::vector<int> tuple(m, 0);
    bool done = false;
    while (!done) {
        const auto& rows = tableau.fill(tuple);
        for (const auto& row : rows) {
            bool zero = true;
            for (const Rat& x : row)
                if (!rat_is_zero(x)) {
                    zero = false;
                    break;
                }
            if (!zero) constraints.add(row);
        }
        if (constraints.rank() == static_cast<int>(cols)) break;  // kernel empty
        int pos = static_cast<int>(m) - 1;
        while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
        if (pos < 0)
            done = true;
        else
            ++tuple[pos];
    }
    std::vector<NcPoly> basis;
    if (constraints.rank() == static_cast<int>(cols)) return basis;
    const std::vector<Monomial> words = permutation_words(m);
    for (const auto& v : kernel_basis(constraints.to_matrix())) {
        NcPoly p;
        for (std::size_t c = 0; c < cols; ++c)
            if (!rat_is_zero(v[c])) p += NcPoly::term(words[c], v[c]);
        basis.push_back(std::move(p));
    }
    return basis;
}

unsigned min_multilinear_identity_degree(const StructureAlgebra& alg, unsigned cap) {
    if (cap == 0)
        cap = static_cast<unsigned>(alg.dim()) * static_cast<unsigned>(alg.dim()) + 1;
    for (unsigned m = 1; m <= cap; ++m)
        if (!identity_space(alg, m).empty()) return m;
    throw DegreeCapExceeded(cap);
}

}  // namespace piq
