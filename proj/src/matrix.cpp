#include "pkit/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pkit {

RationalMatrix RationalMatrix::from_rows(
    const std::vector<std::vector<Rational>>& dense) {
  int r = static_cast<int>(dense.size());
  int c = r == 0 ? 0 : static_cast<int>(dense[0].size());
  RationalMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(dense[i].size()) != c)
      throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j)
      if (!pkit::is_zero(dense[i][j])) m.data_[i].emplace_back(j, dense[i][j]);
  }
  return m;
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, 1);
  return m;
}

Rational RationalMatrix::at(int i, int j) const {
  const Row& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, int col) { return e.first < col; });
  if (it != r.end() && it->first == j) return it->second;
  return Rational(0);
}

void RationalMatrix::set(int i, int j, const Rational& v) {
  Row& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, int col) { return e.first < col; });
  if (it != r.end() && it->first == j) {
    if (pkit::is_zero(v))
      r.erase(it);
    else
      it->second = v;
  } else if (!pkit::is_zero(v)) {
    r.insert(it, {j, v});
  }
}

void RationalMatrix::append_row(const Row& entries) {
  std::map<int, Rational> acc;
  for (const auto& [c, v] : entries) {
    if (c < 0 || c >= cols_) throw std::out_of_range("column index");
    acc[c] += v;
  }
  Row r;
  for (auto& [c, v] : acc)
    if (!pkit::is_zero(v)) r.emplace_back(c, v);
  data_.push_back(std::move(r));
  ++rows_;
}

long RationalMatrix::nonzeros() const {
  long n = 0;
  for (const auto& r : data_) n += static_cast<long>(r.size());
  return n;
}

bool RationalMatrix::is_zero() const { return nonzeros() == 0; }

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("apply: size mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [c, x] : data_[i]) out[i] += x * v[c];
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// row += coeff * other, sparse merge.
RationalMatrix::Row axpy(const RationalMatrix::Row& row, const Rational& coeff,
                         const RationalMatrix::Row& other) {
  RationalMatrix::Row out;
  out.reserve(row.size() + other.size());
  size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].first < row[i].first) {
      Rational v = coeff * other[j].second;
      if (!is_zero(v)) out.emplace_back(other[j].first, v);
      ++j;
    } else {
      Rational v = row[i].second + coeff * other[j].second;
      if (!is_zero(v)) out.emplace_back(row[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

Rational entry_at(const RationalMatrix::Row& r, int col) {
  auto it = std::lower_bound(
      r.begin(), r.end(), col,
      [](const RationalMatrix::Entry& e, int c) { return e.first < c; });
  if (it != r.end() && it->first == col) return it->second;
  return Rational(0);
}

}  // namespace

RrefResult rref_in_column_order(const RationalMatrix& m,
                                const std::vector<int>& column_order) {
  std::vector<RationalMatrix::Row> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));

  std::vector<int> pivots;
  size_t next = 0;  // rows [0, next) already hold pivots
  for (int col : column_order) {
    // Prefer the sparsest candidate row; keeps fill-in down on big systems.
    size_t best = rows.size();
    for (size_t i = next; i < rows.size(); ++i) {
      if (is_zero(entry_at(rows[i], col))) continue;
      if (best == rows.size() || rows[i].size() < rows[best].size()) best = i;
    }
    if (best == rows.size()) continue;
    std::swap(rows[next], rows[best]);
    Rational inv = 1 / entry_at(rows[next], col);
    if (inv != 1)
      for (auto& e : rows[next]) e.second *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == next) continue;
      Rational v = entry_at(rows[i], col);
      if (!is_zero(v)) rows[i] = axpy(rows[i], -v, rows[next]);
    }
    pivots.push_back(col);
    ++next;
  }

  RationalMatrix out(0, m.cols());
  for (size_t i = 0; i < next; ++i) out.append_row(rows[i]);
  for (int i = static_cast<int>(next); i < m.rows(); ++i) out.append_zero_row();
  return {std::move(out), std::move(pivots)};
}

RrefResult rref(const RationalMatrix& m) {
  std::vector<int> order(m.cols());
  std::iota(order.begin(), order.end(), 0);
  return rref_in_column_order(m, order);
}

int rank(const RationalMatrix& m) {
  return static_cast<int>(rref(m).pivots.size());
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  std::vector<int> pivot_row(m.cols(), -1);
  for (size_t k = 0; k < r.pivots.size(); ++k) {
    is_pivot[r.pivots[k]] = true;
    pivot_row[r.pivots[k]] = static_cast<int>(k);
  }
  std::vector<std::vector<Rational>> basis;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[j] = 1;
    for (int p : r.pivots) v[p] = -r.matrix.at(pivot_row[p], j);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool row_space_equal(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("row_space_equal: column mismatch");
  RrefResult ra = rref(a), rb = rref(b);
  if (ra.pivots != rb.pivots) return false;
  size_t n = ra.pivots.size();
  for (size_t i = 0; i < n; ++i)
    if (ra.matrix.row(static_cast<int>(i)) != rb.matrix.row(static_cast<int>(i)))
      return false;
  return true;
}

bool row_space_contains(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("row_space_contains: column mismatch");
  RationalMatrix joint(0, a.cols());
  for (int i = 0; i < a.rows(); ++i) joint.append_row(a.row(i));
  for (int i = 0; i < b.rows(); ++i) joint.append_row(b.row(i));
  return rank(joint) == rank(a);
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out.row(j).emplace_back(i, v);
  return out;
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    std::map<int, Rational> acc;
    for (const auto& [k, v] : a.row(i))
      for (const auto& [j, w] : b.row(k)) acc[j] += v * w;
    RationalMatrix::Row r;
    for (auto& [j, v] : acc)
      if (!is_zero(v)) r.emplace_back(j, v);
    out.row(i) = std::move(r);
  }
  return out;
}

}  // namespace pkit
