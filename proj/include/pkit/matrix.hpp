#ifndef PKIT_MATRIX_HPP
#define PKIT_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "pkit/rational.hpp"

namespace pkit {

// Sparse matrix over Q. Rows are sorted (col, value) lists holding only
// nonzero entries; fine for the dense small cases too.
class RationalMatrix {
 public:
  using Entry = std::pair<int, Rational>;
  using Row = std::vector<Entry>;

  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& dense);
  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Row& row(int i) const { return data_[i]; }
  Row& row(int i) { return data_[i]; }

  Rational at(int i, int j) const;
  void set(int i, int j, const Rational& v);  // keeps the row sorted

  // Appends a row given as a sparse list (unsorted ok, duplicates summed).
  void append_row(const Row& entries);
  void append_zero_row() { data_.emplace_back(); ++rows_; }

  long nonzeros() const;
  bool is_zero() const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;  // m * v

  bool operator==(const RationalMatrix& o) const;
  bool operator!=(const RationalMatrix& o) const { return !(*this == o); }

 private:
  int rows_, cols_;
  std::vector<Row> data_;
};

// Reduced row echelon form, natural column order. Zero rows sink to the
// bottom; the nonzero rows are ordered by pivot column.
struct RrefResult {
  RationalMatrix matrix;
  std::vector<int> pivots;  // strictly increasing column indices
};
RrefResult rref(const RationalMatrix& m);

// Same elimination, but columns are visited in the given order. Used to
// solve each relation for its largest word under a monomial order.
// `column_order[k]` is the k-th column to pivot on.
RrefResult rref_in_column_order(const RationalMatrix& m,
                                const std::vector<int>& column_order);

int rank(const RationalMatrix& m);

// Basis of { v : m v = 0 }, one vector per non-pivot column; m * v = 0 holds
// exactly.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

// True iff the two matrices have the same row space. Throws on column-count
// mismatch.
bool row_space_equal(const RationalMatrix& a, const RationalMatrix& b);

// Row space of `a` contains every row of `b`.
bool row_space_contains(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix transpose(const RationalMatrix& m);

}  // namespace pkit

#endif
