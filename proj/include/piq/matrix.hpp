#ifndef PIQ_MATRIX_HPP
#define PIQ_MATRIX_HPP

#include <optional>
#include <string>
#include <vector>

#include "piq/rational.hpp"

namespace piq {

/// Dense matrix of exact rationals, row-major.
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(int rows, int cols);
    static QMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const;
    bool is_integral() const;

    QMat transpose() const;

    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat operator*(const QMat& o) const;
    QMat operator*(const Rat& s) const;
    QMat operator-() const;
    QMat& operator+=(const QMat& o);
    QMat& operator-=(const QMat& o);
    bool operator==(const QMat& o) const;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;  // matrix * column
    std::vector<Rat> row(int i) const;
    std::vector<Rat> col(int j) const;

    /// Row-major "[[a,b],[c,d]]".
    std::string to_string() const;

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

/// Parses the row-major "[[a,b],[c,d]]" form; entries are rationals.
/// Throws std::invalid_argument on malformed input or ragged rows.
QMat parse_matrix(std::string_view text);

/// Row-echelon data produced by fraction-free elimination (Bareiss steps
/// with partial pivoting after scaling every row to integer entries).
/// Entries of `mat` stay integral throughout, which keeps intermediate
/// values to minor-sized determinants instead of unreduced fractions.
struct EchelonForm {
    QMat mat;                    // echelon matrix (rows permuted in place)
    std::vector<int> pivot_cols;  // column of the r-th pivot
    int rank = 0;
};

EchelonForm echelonize(QMat m);

int rank(const QMat& m);

/// Basis of the right kernel {v : M v = 0}; deterministic (one vector per
/// free column, ascending).
std::vector<std::vector<Rat>> kernel_basis(const QMat& m);

/// One exact solution of M x = b, or nullopt when inconsistent. Free
/// variables are set to zero.
std::optional<std::vector<Rat>> solve(const QMat& m, const std::vector<Rat>& b);

/// Incrementally maintained row space in reduced echelon form. Used for
/// greedy independent-subset selection and for rank accumulation with
/// early exit.
class RowSpace {
  public:
    explicit RowSpace(int cols) : cols_(cols) {}

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Adds the row; returns true when it enlarges the span.
    bool add(std::vector<Rat> v);

    bool contains(std::vector<Rat> v) const;

    /// The reduced rows as a matrix (rank() x cols()).
    QMat to_matrix() const;

  private:
    void reduce(std::vector<Rat>& v) const;

    int cols_;
    std::vector<std::vector<Rat>> rows_;  // kept reduced, pivots ascending
    std::vector<int> pivots_;
};

}  // namespace piq

#endif
