#include "piq/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace piq {

QMat::QMat(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
    a_.assign(static_cast<std::size_t>(rows) * cols, Rat(0));
}

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMat::is_zero() const {
    for (const Rat& x : a_)
        if (!rat_is_zero(x)) return false;
    return true;
}

bool QMat::is_integral() const {
    for (const Rat& x : a_)
        if (!rat_is_integer(x)) return false;
    return true;
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMat QMat::operator+(const QMat& o) const {
    QMat r = *this;
    r += o;
    return r;
}

QMat QMat::operator-(const QMat& o) const {
    QMat r = *this;
    r -= o;
    return r;
}

QMat& QMat::operator+=(const QMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

QMat& QMat::operator-=(const QMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    QMat r(rows_, o.cols_);
    Rat tmp;
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (rat_is_zero(aik)) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Rat& bkj = o.at(k, j);
                if (rat_is_zero(bkj)) continue;
                tmp = aik * bkj;
                r.at(i, j) += tmp;
            }
        }
    return r;
}

QMat QMat::operator*(const Rat& s) const {
    QMat r = *this;
    for (Rat& x : r.a_) x *= s;
    return r;
}

QMat QMat::operator-() const { return *this * Rat(-1); }

bool QMat::operator==(const QMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::vector<Rat> QMat::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!rat_is_zero(at(i, j)) && !rat_is_zero(v[j]))
                r[i] += at(i, j) * v[j];
    return r;
}

std::vector<Rat> QMat::row(int i) const {
    std::vector<Rat> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

std::vector<Rat> QMat::col(int j) const {
    std::vector<Rat> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

std::string QMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << ",";
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ",";
            os << piq::to_string(at(i, j));
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

QMat parse_matrix(std::string_view text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw std::invalid_argument(std::string("malformed matrix: expected '") +
                                        c + "' at position " + std::to_string(i));
        ++i;
    };
    std::vector<std::vector<Rat>> rows;
    expect('[');
    skip_ws();
    while (i < text.size() && text[i] == '[') {
        ++i;
        std::vector<Rat> row;
        skip_ws();
        while (i < text.size() && text[i] != ']') {
            std::size_t start = i;
            while (i < text.size() && text[i] != ',' && text[i] != ']') ++i;
            std::size_t end = i;
            while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1])))
                --end;
            row.push_back(parse_rational(text.substr(start, end - start)));
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_ws();
            }
        }
        expect(']');
        rows.push_back(std::move(row));
        skip_ws();
        if (i < text.size() && text[i] == ',') {
            ++i;
            skip_ws();
        }
    }
    expect(']');
    skip_ws();
    if (i != text.size())
        throw std::invalid_argument("malformed matrix: trailing input at position " +
                                    std::to_string(i));
    if (rows.empty()) throw std::invalid_argument("malformed matrix: no rows");
    const std::size_t width = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width)
            throw std::invalid_argument("malformed matrix: ragged rows");
    QMat m(static_cast<int>(rows.size()), static_cast<int>(width));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

namespace {

// abs(a) < abs(b) for rationals, compared without allocating.
bool abs_less(const Rat& a, const Rat& b) {
    Rat aa = abs(a), bb = abs(b);
    return aa < bb;
}

}  // namespace

EchelonForm echelonize(QMat m) {
    const int rows = m.rows(), cols = m.cols();
    // Scale every row to integer entries; row scaling changes neither the
    // rank nor the null space.
    for (int i = 0; i < rows; ++i) {
        Int l = 1;
        for (int j = 0; j < cols; ++j) l = lcm(l, m.at(i, j).get_den());
        if (mpz_cmp_ui(l.get_mpz_t(), 1) != 0) {
            Rat s(l);
            for (int j = 0; j < cols; ++j) m.at(i, j) *= s;
        }
    }
    EchelonForm e;
    e.rank = 0;
    Rat prev(1);
    for (int c = 0; c < cols && e.rank < rows; ++c) {
        // Partial pivoting: largest absolute value in the column.
        int piv = -1;
        for (int i = e.rank; i < rows; ++i) {
            if (rat_is_zero(m.at(i, c))) continue;
            if (piv < 0 || abs_less(m.at(piv, c), m.at(i, c))) piv = i;
        }
        if (piv < 0) continue;
        if (piv != e.rank)
            for (int j = 0; j < cols; ++j)
                std::swap(m.at(piv, j), m.at(e.rank, j));
        const int r = e.rank;
        // One-step Bareiss update: entries remain integral because each is
        // a minor of the (scaled) input divided by the previous pivot.
        for (int i = r + 1; i < rows; ++i) {
            if (rat_is_zero(m.at(i, c))) {
                for (int j = c + 1; j < cols; ++j)
                    if (!rat_is_zero(m.at(i, j))) m.at(i, j) = m.at(r, c) * m.at(i, j) / prev;
                continue;
            }
            for (int j = c + 1; j < cols; ++j) {
                m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
            }
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        e.pivot_cols.push_back(c);
        ++e.rank;
    }
    e.mat = std::move(m);
    return e;
}

int rank(const QMat& m) { return echelonize(m).rank; }

namespace {

// Back-substitution: reduce an echelon form to RREF (pivots 1, zeros above).
void reduce_echelon(EchelonForm& e) {
    for (int r = e.rank - 1; r >= 0; --r) {
        const int c = e.pivot_cols[r];
        Rat inv = Rat(1) / e.mat.at(r, c);
        for (int j = c; j < e.mat.cols(); ++j) e.mat.at(r, j) *= inv;
        for (int i = 0; i < r; ++i) {
            Rat f = e.mat.at(i, c);
            if (rat_is_zero(f)) continue;
            for (int j = c; j < e.mat.cols(); ++j)
                e.mat.at(i, j) -= f * e.mat.at(r, j);
        }
    }
}

}  // namespace

std::vector<std::vector<Rat>> kernel_basis(const QMat& m) {
    const int cols = m.cols();
    EchelonForm e = echelonize(m);
    reduce_echelon(e);
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (int r = 0; r < e.rank; ++r) v[e.pivot_cols[r]] = -e.mat.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve(const QMat& m, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    QMat aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    EchelonForm e = echelonize(std::move(aug));
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols())
        return std::nullopt;  // inconsistent
    reduce_echelon(e);
    std::vector<Rat> x(m.cols(), Rat(0));
    for (int r = 0; r < e.rank; ++r) x[e.pivot_cols[r]] = e.mat.at(r, m.cols());
    return x;
}

void RowSpace::reduce(std::vector<Rat>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rat& f = v[pivots_[r]];
        if (rat_is_zero(f)) continue;
        Rat factor = f;  // pivot entries are normalized to 1
        for (int j = 0; j < cols_; ++j)
            if (!rat_is_zero(rows_[r][j])) v[j] -= factor * rows_[r][j];
    }
}

bool RowSpace::add(std::vector<Rat> v) {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("RowSpace: row size mismatch");
    reduce(v);
    int p = -1;
    for (int j = 0; j < cols_; ++j)
        if (!rat_is_zero(v[j])) {
            p = j;
            break;
        }
    if (p < 0) return false;
    Rat inv = Rat(1) / v[p];
    for (int j = p; j < cols_; ++j) v[j] *= inv;
    // Keep the reduced invariant: clear column p in the existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rat f = rows_[r][p];
        if (rat_is_zero(f)) continue;
        for (int j = 0; j < cols_; ++j)
            if (!rat_is_zero(v[j])) rows_[r][j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

bool RowSpace::contains(std::vector<Rat> v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("RowSpace: row size mismatch");
    reduce(v);
    for (const Rat& x : v)
        if (!rat_is_zero(x)) return false;
    return true;
}

QMat RowSpace::to_matrix() const {
    QMat m(rank(), cols_);
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = rows_[i][j];
    return m;
}

}  // namespace piq
