#include "piq/multalg.hpp"

#include <stdexcept>

namespace piq {

QMat left_mult_matrix(const StructureAlgebra& alg, const Element& a) {
    if (&a.algebra() != &alg)
        throw std::invalid_argument("element belongs to a different algebra");
    const int n = alg.dim();
    QMat m(n, n);
    for (int i = 0; i < n; ++i) {
        const Rat& c = a.coords()[i];
        if (rat_is_zero(c)) continue;
        for (int j = 0; j < n; ++j)
            for (const auto& e : alg.cell(i, j)) m.at(e.k, j) += c * e.c;
    }
    return m;
}

QMat right_mult_matrix(const StructureAlgebra& alg, const Element& b) {
    if (&b.algebra() != &alg)
        throw std::invalid_argument("element belongs to a different algebra");
    const int n = alg.dim();
    QMat m(n, n);
    for (int i = 0; i < n; ++i) {
        const Rat& c = b.coords()[i];
        if (rat_is_zero(c)) continue;
        for (int j = 0; j < n; ++j)
            for (const auto& e : alg.cell(j, i)) m.at(e.k, j) += c * e.c;
    }
    return m;
}

MultOperator::MultOperator(const StructureAlgebra& alg, QMat matrix)
    : alg_(&alg), mat_(std::move(matrix)) {
    if (mat_.rows() != alg.dim() || mat_.cols() != alg.dim())
        throw std::invalid_argument("operator matrix has wrong shape");
}

MultOperator::MultOperator(const StructureAlgebra& alg, QMat matrix, Pairs presentation)
    : MultOperator(alg, std::move(matrix)) {
    QMat sum(alg.dim(), alg.dim());
    for (const auto& [a, b] : presentation)
        sum += left_mult_matrix(alg, a) * right_mult_matrix(alg, b);
    if (!(sum == mat_))
        throw std::invalid_argument("presentation does not match operator matrix");
    pres_ = std::move(presentation);
}

MultOperator MultOperator::from_pairs(const StructureAlgebra& alg, Pairs presentation) {
    QMat sum(alg.dim(), alg.dim());
    for (const auto& [a, b] : presentation)
        sum += left_mult_matrix(alg, a) * right_mult_matrix(alg, b);
    MultOperator op(alg, std::move(sum));
    op.pres_ = std::move(presentation);
    return op;
}

MultOperator MultOperator::zero(const StructureAlgebra& alg) {
    return MultOperator(alg, QMat(alg.dim(), alg.dim()));
}

MultOperator MultOperator::identity(const StructureAlgebra& alg) {
    return MultOperator(alg, QMat::identity(alg.dim()));
}

Element MultOperator::apply(const Element& x) const {
    if (&x.algebra() != alg_)
        throw std::invalid_argument("element belongs to a different algebra");
    return Element(*alg_, mat_.apply(x.coords()));
}

void MultOperator::check_same(const MultOperator& o) const {
    if (alg_ != o.alg_)
        throw std::invalid_argument("operators act on different algebras");
}

MultOperator MultOperator::operator+(const MultOperator& o) const {
    check_same(o);
    MultOperator r(*alg_, mat_ + o.mat_);
    if (pres_ && o.pres_) {
        Pairs p = *pres_;
        p.insert(p.end(), o.pres_->begin(), o.pres_->end());
        r.pres_ = std::move(p);
    }
    return r;
}

MultOperator MultOperator::operator-(const MultOperator& o) const {
    check_same(o);
    MultOperator r(*alg_, mat_ - o.mat_);
    if (pres_ && o.pres_) {
        Pairs p = *pres_;
        for (const auto& [a, b] : *o.pres_) p.emplace_back(-a, b);
        r.pres_ = std::move(p);
    }
    return r;
}

MultOperator MultOperator::operator*(const MultOperator& o) const {
    check_same(o);
    return MultOperator(*alg_, mat_ * o.mat_);
}

MultOperator MultOperator::operator*(const Rat& s) const {
    MultOperator r(*alg_, mat_ * s);
    if (pres_) {
        Pairs p;
        for (const auto& [a, b] : *pres_) p.emplace_back(a * s, b);
        r.pres_ = std::move(p);
    }
    return r;
}

bool MultOperator::operator==(const MultOperator& o) const {
    return alg_ == o.alg_ && mat_ == o.mat_;
}

int mult_algebra_dim(const StructureAlgebra& alg) {
    const int n = alg.dim();
    QMat stacked(n * n, n * n);
    std::vector<QMat> lefts, rights;
    lefts.reserve(n);
    rights.reserve(n);
    for (int i = 0; i < n; ++i) {
        lefts.push_back(left_mult_matrix(alg, basis_element(alg, i)));
        rights.push_back(right_mult_matrix(alg, basis_element(alg, i)));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QMat prod = lefts[i] * rights[j];
            // Row-major flattening of the operator matrix.
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    stacked.at(i * n + j, r * n + c) = prod.at(r, c);
        }
    return rank(stacked);
}

int operator_rank(const MultOperator& w) { return rank(w.matrix()); }

MultOperator::Pairs reduce_to_independent_left(const StructureAlgebra& alg,
                                               const MultOperator::Pairs& pairs) {
    if (pairs.empty())
        throw std::invalid_argument("cannot reduce an empty presentation");
    const int n = alg.dim();
    RowSpace span(n);
    std::vector<int> selected;  // indices into pairs, in first-come order
    MultOperator::Pairs result;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto& [a, b] = pairs[idx];
        if (&a.algebra() != &alg || &b.algebra() != &alg)
            throw std::invalid_argument("pair belongs to a different algebra");
        if (span.add(a.coords())) {
            selected.push_back(static_cast<int>(idx));
            result.emplace_back(a, b);
            continue;
        }
        if (a.is_zero()) continue;
        // a = sum lambda_k a_{selected_k}; fold b into the selected rights.
        QMat cols(n, static_cast<int>(selected.size()));
        for (std::size_t k = 0; k < selected.size(); ++k)
            for (int r = 0; r < n; ++r)
                cols.at(r, static_cast<int>(k)) = pairs[selected[k]].first.coords()[r];
        auto lambda = solve(cols, a.coords());
        if (!lambda) throw std::logic_error("dependent element failed to expand");
        for (std::size_t k = 0; k < selected.size(); ++k)
            if (!rat_is_zero((*lambda)[k]))
                result[k].second = result[k].second + b * (*lambda)[k];
    }
    // The rewrite must reproduce the operator exactly.
    QMat before(n, n), after(n, n);
    for (const auto& [a, b] : pairs)
        before += left_mult_matrix(alg, a) * right_mult_matrix(alg, b);
    for (const auto& [a, b] : result)
        after += left_mult_matrix(alg, a) * right_mult_matrix(alg, b);
    if (!(before == after))
        throw std::logic_error("presentation rewrite changed the operator");
    return result;
}

}  // namespace piq
