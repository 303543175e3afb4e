#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hochmod/error.hpp"
#include "hochmod/fields.hpp"

namespace hochmod {

using index_t = std::uint32_t;

template <class V>
struct Entry {
  index_t index;
  V value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by index, no stored zeros.
template <class V>
using SparseVector = std::vector<Entry<V>>;

template <class V>
struct Triplet {
  index_t row;
  index_t col;
  V value;
};

/// d^n, throwing ResourceError when it does not fit the index type.
std::size_t checked_power(std::size_t d, std::size_t n);

/// Row-major flattening: sum_k i_k d^(n-1-k). The empty tuple maps to 0.
std::size_t tensor_index(std::span<const std::size_t> indices, std::size_t d);

/// Inverse of tensor_index for tuples of length n.
std::vector<std::size_t> tensor_digits(std::size_t index, std::size_t d, std::size_t n);

/// Sparse matrix over K in compressed-column form.
template <class K>
class Matrix {
 public:
  using V = typename K::value_type;

  Matrix(K field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), colptr_(cols + 1, 0) {}

  static Matrix identity(const K& field, std::size_t n) {
    Matrix m(field, n, n);
    m.entries_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      m.entries_.push_back({index_t(j), field.one()});
      m.colptr_[j + 1] = j + 1;
    }
    return m;
  }

  static Matrix scalar(const K& field, std::size_t n, const V& s) {
    if (field.is_zero(s)) return Matrix(field, n, n);
    Matrix m = identity(field, n);
    for (auto& e : m.entries_) e.value = s;
    return m;
  }

  /// Duplicate positions are summed; zeros are dropped.
  static Matrix from_triplets(const K& field, std::size_t rows, std::size_t cols,
                              std::vector<Triplet<V>> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    Matrix m(field, rows, cols);
    std::size_t i = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      while (i < triplets.size() && triplets[i].col == j) {
        if (triplets[i].row >= rows) throw DimensionMismatch("triplet row out of range");
        index_t r = triplets[i].row;
        V sum = std::move(triplets[i].value);
        for (++i; i < triplets.size() && triplets[i].col == j && triplets[i].row == r; ++i)
          sum = field.add(sum, triplets[i].value);
        if (!field.is_zero(sum)) m.entries_.push_back({r, std::move(sum)});
      }
      m.colptr_[j + 1] = m.entries_.size();
    }
    if (i != triplets.size()) throw DimensionMismatch("triplet column out of range");
    return m;
  }

  /// Columns must already be sorted sparse vectors.
  static Matrix from_columns(const K& field, std::size_t rows, std::vector<SparseVector<V>> columns) {
    Matrix m(field, rows, columns.size());
    std::size_t total = 0;
    for (const auto& c : columns) total += c.size();
    m.entries_.reserve(total);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      for (auto& e : columns[j]) {
        if (e.index >= rows) throw DimensionMismatch("column entry out of range");
        m.entries_.push_back(std::move(e));
      }
      m.colptr_[j + 1] = m.entries_.size();
    }
    return m;
  }

  static Matrix from_dense(const K& field, const std::vector<std::vector<V>>& rows) {
    std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
    std::vector<Triplet<V>> t;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j)
        if (!field.is_zero(rows[i][j])) t.push_back({index_t(i), index_t(j), rows[i][j]});
    }
    return from_triplets(field, r, c, std::move(t));
  }

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  std::span<const Entry<V>> column(std::size_t j) const {
    return {entries_.data() + colptr_[j], entries_.data() + colptr_[j + 1]};
  }

  SparseVector<V> column_vector(std::size_t j) const {
    auto c = column(j);
    return SparseVector<V>(c.begin(), c.end());
  }

  V at(std::size_t i, std::size_t j) const {
    auto c = column(j);
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const Entry<V>& e, std::size_t r) { return e.index < r; });
    if (it != c.end() && it->index == i) return it->value;
    return field_.zero();
  }

  std::vector<std::vector<V>> to_dense() const {
    std::vector<std::vector<V>> out(rows_, std::vector<V>(cols_, field_.zero()));
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : column(j)) out[e.index][j] = e.value;
    return out;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    std::vector<std::size_t> count(rows_ + 1, 0);
    for (const auto& e : entries_) ++count[e.index + 1];
    for (std::size_t i = 0; i < rows_; ++i) count[i + 1] += count[i];
    t.colptr_ = count;
    t.entries_.resize(entries_.size(), Entry<V>{0, field_.zero()});
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : column(j)) t.entries_[count[e.index]++] = {index_t(j), e.value};
    return t;
  }

  SparseVector<V> apply(const SparseVector<V>& x) const;
  std::vector<V> apply_dense(const std::vector<V>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    std::vector<V> y(rows_, field_.zero());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_zero(x[j])) continue;
      for (const auto& e : column(j)) field_.add_mul(y[e.index], e.value, x[j]);
    }
    return y;
  }

  Matrix scaled(const V& s) const {
    if (field_.is_zero(s)) return Matrix(field_, rows_, cols_);
    Matrix m = *this;
    for (auto& e : m.entries_) e.value = field_.mul(e.value, s);
    return m;
  }

  bool is_zero() const { return entries_.empty(); }
  bool is_identity() const { return *this == identity(field_, rows_); }

  /// First (row, col) where the two matrices differ, scanning column-major.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return std::pair<std::size_t, std::size_t>{0, 0};
    for (std::size_t j = 0; j < cols_; ++j) {
      auto a = column(j), b = other.column(j);
      std::size_t n = std::min(a.size(), b.size());
      for (std::size_t k = 0; k < n; ++k) {
        if (a[k].index != b[k].index)
          return std::pair<std::size_t, std::size_t>{std::min(a[k].index, b[k].index), j};
        if (!field_.eq(a[k].value, b[k].value)) return std::pair<std::size_t, std::size_t>{a[k].index, j};
      }
      if (a.size() != b.size())
        return std::pair<std::size_t, std::size_t>{a.size() > n ? a[n].index : b[n].index, j};
    }
    return std::nullopt;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return !a.first_difference(b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, b, false); }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, b, true); }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

  Matrix operator-() const { return scaled(field_.neg(field_.one())); }

 private:
  static Matrix combine(const Matrix& a, const Matrix& b, bool subtract);
  static Matrix multiply(const Matrix& a, const Matrix& b);

  template <class>
  friend class ColumnBuilder;

  K field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> colptr_;
  std::vector<Entry<V>> entries_;
};

/// Dense accumulator for assembling a matrix one column at a time.
template <class K>
class ColumnBuilder {
 public:
  using V = typename K::value_type;

  ColumnBuilder(K field, std::size_t rows)
      : field_(std::move(field)), rows_(rows), acc_(rows, field_.zero()), mark_(rows, 0) {}

  void add(std::size_t row, const V& value) {
    if (field_.is_zero(value)) return;
    if (!mark_[row]) {
      mark_[row] = 1;
      touched_.push_back(index_t(row));
      acc_[row] = value;
    } else {
      acc_[row] = field_.add(acc_[row], value);
    }
  }

  void add_mul(std::size_t row, const V& a, const V& b) {
    if (!mark_[row]) {
      mark_[row] = 1;
      touched_.push_back(index_t(row));
      acc_[row] = field_.mul(a, b);
    } else {
      field_.add_mul(acc_[row], a, b);
    }
  }

  /// Adds scale * x.
  void add_vector(std::span<const Entry<V>> x, const V& scale) {
    for (const auto& e : x) add_mul(e.index, e.value, scale);
  }

  /// Takes the accumulated column and resets the accumulator.
  SparseVector<V> take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVector<V> out;
    out.reserve(touched_.size());
    const V zero = field_.zero();
    for (index_t r : touched_) {
      if (!field_.is_zero(acc_[r])) out.push_back({r, std::move(acc_[r])});
      acc_[r] = zero;
      mark_[r] = 0;
    }
    touched_.clear();
    return out;
  }

  void finish_column() { columns_.push_back(take()); }

  Matrix<K> build() { return Matrix<K>::from_columns(field_, rows_, std::move(columns_)); }

  const K& field() const { return field_; }

 private:
  K field_;
  std::size_t rows_;
  std::vector<V> acc_;
  std::vector<char> mark_;
  std::vector<index_t> touched_;
  std::vector<SparseVector<V>> columns_;
};

template <class K>
SparseVector<typename K::value_type> Matrix<K>::apply(const SparseVector<V>& x) const {
  ColumnBuilder<K> b(field_, rows_);
  for (const auto& e : x) {
    if (e.index >= cols_) throw DimensionMismatch("vector index out of range");
    b.add_vector(column(e.index), e.value);
  }
  return b.take();
}

template <class K>
Matrix<K> Matrix<K>::combine(const Matrix& a, const Matrix& b, bool subtract) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum size mismatch");
  const K& F = a.field_;
  Matrix m(F, a.rows_, a.cols_);
  m.entries_.reserve(a.entries_.size() + b.entries_.size());
  for (std::size_t j = 0; j < a.cols_; ++j) {
    auto x = a.column(j), y = b.column(j);
    std::size_t p = 0, q = 0;
    while (p < x.size() || q < y.size()) {
      if (q == y.size() || (p < x.size() && x[p].index < y[q].index)) {
        m.entries_.push_back(x[p++]);
      } else if (p == x.size() || y[q].index < x[p].index) {
        m.entries_.push_back({y[q].index, subtract ? F.neg(y[q].value) : y[q].value});
        ++q;
      } else {
        V s = subtract ? F.sub(x[p].value, y[q].value) : F.add(x[p].value, y[q].value);
        if (!F.is_zero(s)) m.entries_.push_back({x[p].index, std::move(s)});
        ++p;
        ++q;
      }
    }
    m.colptr_[j + 1] = m.entries_.size();
  }
  return m;
}

template <class K>
Matrix<K> Matrix<K>::multiply(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
  ColumnBuilder<K> builder(a.field_, a.rows_);
  for (std::size_t j = 0; j < b.cols_; ++j) {
    for (const auto& e : b.column(j)) builder.add_vector(a.column(e.index), e.value);
    builder.finish_column();
  }
  return builder.build();
}

/// Kronecker product; (A (x) B)[i1*rb + i2, j1*cb + j2] = A[i1,j1] B[i2,j2].
template <class K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  const K& F = a.field();
  std::vector<SparseVector<typename K::value_type>> cols;
  cols.reserve(a.cols() * b.cols());
  for (std::size_t j1 = 0; j1 < a.cols(); ++j1)
    for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
      SparseVector<typename K::value_type> c;
      for (const auto& x : a.column(j1))
        for (const auto& y : b.column(j2))
          c.push_back({index_t(x.index * b.rows() + y.index), F.mul(x.value, y.value)});
      cols.push_back(std::move(c));
    }
  return Matrix<K>::from_columns(F, a.rows() * b.rows(), std::move(cols));
}

/// Normalizes a nonzero row: monic, or primitive integral for fraction-free fields.
template <class K>
void normalize_row(const K& field, SparseVector<typename K::value_type>& row) {
  if (row.empty()) return;
  if constexpr (K::fraction_free) {
    std::vector<typename K::value_type> vals;
    vals.reserve(row.size());
    for (auto& e : row) vals.push_back(std::move(e.value));
    make_primitive(vals.data(), vals.size());
    for (std::size_t i = 0; i < row.size(); ++i) row[i].value = std::move(vals[i]);
  } else {
    if (field.is_one(row[0].value)) return;
    auto inv = field.inv(row[0].value);
    for (auto& e : row) e.value = field.mul(e.value, inv);
  }
}

template <class K>
void make_monic(const K& field, SparseVector<typename K::value_type>& row) {
  if (row.empty() || field.is_one(row[0].value)) return;
  auto inv = field.inv(row[0].value);
  for (auto& e : row) e.value = field.mul(e.value, inv);
}

/// Incremental row echelon basis of a subspace of K^dim.
///
/// Rows are kept with leading entry at their pivot; over fraction-free fields
/// they are primitive integer vectors and reduction cross-multiplies.
template <class K>
class Echelon {
 public:
  using V = typename K::value_type;

  Echelon(K field, std::size_t dim)
      : field_(std::move(field)), dim_(dim), row_of_pivot_(dim, -1) {}

  const K& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Residual of v modulo the span; zero at every pivot column. Over
  /// fraction-free fields the residual is only determined up to a nonzero scalar.
  SparseVector<V> reduce(SparseVector<V> v) const {
    if (rows_.empty() || v.empty()) return v;
    if (acc_.size() != dim_) {
      acc_.assign(dim_, field_.zero());
      in_heap_.assign(dim_, 0);
    }
    heap_.clear();
    SparseVector<V> out;
    for (auto& e : v) {
      if (e.index >= dim_) throw DimensionMismatch("vector index out of range");
      acc_[e.index] = std::move(e.value);
      in_heap_[e.index] = 1;
      heap_.push_back(e.index);
    }
    std::make_heap(heap_.begin(), heap_.end(), std::greater<>());
    const V zero = field_.zero();
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
      index_t c = heap_.back();
      heap_.pop_back();
      in_heap_[c] = 0;
      V val = std::move(acc_[c]);
      acc_[c] = zero;
      if (field_.is_zero(val)) continue;
      std::int32_t r = row_of_pivot_[c];
      if (r < 0) {
        out.push_back({c, std::move(val)});
        continue;
      }
      const auto& row = rows_[r];
      if constexpr (K::fraction_free) {
        const V& lead = row[0].value;
        if (!field_.is_one(lead)) {
          for (index_t i : heap_) acc_[i] = field_.mul(acc_[i], lead);
          for (auto& e : out) e.value = field_.mul(e.value, lead);
        }
      }
      for (std::size_t k = 1; k < row.size(); ++k) {
        index_t j = row[k].index;
        acc_[j] = field_.sub(acc_[j], field_.mul(val, row[k].value));
        if (!in_heap_[j]) {
          in_heap_[j] = 1;
          heap_.push_back(j);
          std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
        }
      }
    }
    return out;
  }

  bool contains(const SparseVector<V>& v) const { return reduce(v).empty(); }

  /// Adds v to the basis if it is independent; returns whether it was added.
  bool insert(SparseVector<V> v) {
    SparseVector<V> r = reduce(std::move(v));
    if (r.empty()) return false;
    normalize_row(field_, r);
    row_of_pivot_[r[0].index] = std::int32_t(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  /// Pivot columns in ascending order.
  std::vector<index_t> pivots() const {
    std::vector<index_t> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r[0].index);
    std::sort(p.begin(), p.end());
    return p;
  }

  /// The reduced row echelon basis: monic rows, sorted by pivot, each zero at
  /// every other pivot column.
  std::vector<SparseVector<V>> reduced_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a][0].index < rows_[b][0].index; });
    std::vector<SparseVector<V>> out(rows_.size());
    std::vector<std::int32_t> done(dim_, -1);
    ColumnBuilder<K> acc(field_, dim_);
    const V minus_one = field_.neg(field_.one());
    for (std::size_t k = order.size(); k-- > 0;) {
      SparseVector<V> row = rows_[order[k]];
      make_monic(field_, row);
      bool touched = false;
      for (std::size_t i = 1; i < row.size(); ++i)
        if (done[row[i].index] >= 0) touched = true;
      if (touched) {
        acc.add_vector(row, field_.one());
        for (std::size_t i = 1; i < row.size(); ++i) {
          std::int32_t p = done[row[i].index];
          if (p < 0) continue;
          // Processed rows are monic and zero at each other's pivots, so this
          // clears column row[i].index without disturbing other pivots.
          acc.add_vector(out[p], field_.mul(minus_one, row[i].value));
        }
        row = acc.take();
      }
      done[row[0].index] = std::int32_t(k);
      out[k] = std::move(row);
    }
    return out;
  }

 private:
  K field_;
  std::size_t dim_;
  std::vector<SparseVector<V>> rows_;
  std::vector<std::int32_t> row_of_pivot_;
  mutable std::vector<V> acc_;
  mutable std::vector<char> in_heap_;
  mutable std::vector<index_t> heap_;
};

/// A subspace of K^ambient, stored by its reduced row echelon basis.
template <class K>
struct Subspace {
  using V = typename K::value_type;

  K field;
  std::size_t ambient = 0;
  std::vector<SparseVector<V>> basis;
  std::vector<index_t> pivots;

  std::size_t dim() const { return basis.size(); }

  static Subspace from_echelon(const Echelon<K>& e) {
    Subspace s{e.field(), e.dim(), e.reduced_rows(), {}};
    for (const auto& b : s.basis) s.pivots.push_back(b[0].index);
    return s;
  }

  static Subspace span(const K& field, std::size_t ambient, std::vector<SparseVector<V>> vectors) {
    Echelon<K> e(field, ambient);
    for (auto& v : vectors) e.insert(std::move(v));
    return from_echelon(e);
  }

  static Subspace zero(const K& field, std::size_t ambient) { return Subspace{field, ambient, {}, {}}; }

  static Subspace full(const K& field, std::size_t ambient) {
    Subspace s{field, ambient, {}, {}};
    for (std::size_t i = 0; i < ambient; ++i) {
      s.basis.push_back({{index_t(i), field.one()}});
      s.pivots.push_back(index_t(i));
    }
    return s;
  }

  /// Column span of m.
  static Subspace column_span(const Matrix<K>& m) {
    Echelon<K> e(m.field(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column_vector(j));
    return from_echelon(e);
  }

  Echelon<K> echelon() const {
    Echelon<K> e(field, ambient);
    for (const auto& b : basis) e.insert(b);
    return e;
  }

  bool contains(const SparseVector<V>& v) const { return echelon().contains(v); }

  /// Basis vectors as the columns of an ambient x dim matrix.
  Matrix<K> as_columns() const { return Matrix<K>::from_columns(field, ambient, basis); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient || a.basis.size() != b.basis.size()) return false;
    for (std::size_t i = 0; i < a.basis.size(); ++i) {
      if (a.basis[i].size() != b.basis[i].size()) return false;
      for (std::size_t k = 0; k < a.basis[i].size(); ++k)
        if (a.basis[i][k].index != b.basis[i][k].index ||
            !a.field.eq(a.basis[i][k].value, b.basis[i][k].value))
          return false;
    }
    return true;
  }
};

template <class K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<index_t> pivots;
};

namespace detail {

template <class K>
RrefResult<K> rref_dense(const Matrix<K>& m) {
  const K& F = m.field();
  auto a = m.to_dense();
  std::size_t rows = m.rows(), cols = m.cols(), r = 0;
  std::vector<index_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && F.is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    auto inv = F.inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = F.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || F.is_zero(a[i][c])) continue;
      auto f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
    }
    pivots.push_back(index_t(c));
    ++r;
  }
  return {Matrix<K>::from_dense(F, a), std::move(pivots)};
}

template <class K>
RrefResult<K> rref_sparse(const Matrix<K>& m) {
  const K& F = m.field();
  Matrix<K> t = m.transpose();
  Echelon<K> e(F, m.cols());
  for (std::size_t i = 0; i < t.cols(); ++i) e.insert(t.column_vector(i));
  auto rows = e.reduced_rows();
  std::vector<index_t> pivots;
  std::vector<Triplet<typename K::value_type>> trip;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    pivots.push_back(rows[i][0].index);
    for (auto& x : rows[i]) trip.push_back({index_t(i), x.index, std::move(x.value)});
  }
  return {Matrix<K>::from_triplets(F, m.rows(), m.cols(), std::move(trip)), std::move(pivots)};
}

}  // namespace detail

inline constexpr std::size_t kDenseThreshold = 64;

/// Reduced row echelon form; zero rows at the bottom.
template <class K>
RrefResult<K> rref(const Matrix<K>& m) {
  if (m.rows() <= kDenseThreshold && m.cols() <= kDenseThreshold) return detail::rref_dense(m);
  return detail::rref_sparse(m);
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  if (m.rows() <= kDenseThreshold && m.cols() <= kDenseThreshold) return detail::rref_dense(m).pivots.size();
  // Eliminate along the shorter side.
  if (m.rows() < m.cols()) {
    Echelon<K> e(m.field(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column_vector(j));
    return e.rank();
  }
  Matrix<K> t = m.transpose();
  Echelon<K> e(m.field(), m.cols());
  for (std::size_t i = 0; i < t.cols(); ++i) e.insert(t.column_vector(i));
  return e.rank();
}

/// Basis of {x : m x = 0}.
template <class K>
Subspace<K> kernel_basis(const Matrix<K>& m) {
  const K& F = m.field();
  auto rr = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (index_t p : rr.pivots) is_pivot[p] = 1;
  std::vector<SparseVector<typename K::value_type>> vecs(m.cols());
  Matrix<K> rows = rr.reduced.transpose();
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    for (const auto& e : rows.column(i))
      if (!is_pivot[e.index]) vecs[e.index].push_back({rr.pivots[i], F.neg(e.value)});
  std::vector<SparseVector<typename K::value_type>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    auto& v = vecs[f];
    v.push_back({index_t(f), F.one()});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    basis.push_back(std::move(v));
  }
  return Subspace<K>::span(F, m.cols(), std::move(basis));
}

/// Some x with m x = b (the one with zero free coordinates), or nullopt.
template <class K>
std::optional<std::vector<typename K::value_type>> solve(const Matrix<K>& m,
                                                         const std::vector<typename K::value_type>& b) {
  const K& F = m.field();
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side has wrong length");
  std::vector<typename K::value_type> x(m.cols(), F.zero());
  if (m.rows() == 0) return x;
  std::vector<SparseVector<typename K::value_type>> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column_vector(j));
  SparseVector<typename K::value_type> rhs;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!F.is_zero(b[i])) rhs.push_back({index_t(i), b[i]});
  cols.push_back(std::move(rhs));
  auto aug = Matrix<K>::from_columns(F, m.rows(), std::move(cols));
  auto rr = rref(aug);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == m.cols()) return std::nullopt;
    x[rr.pivots[i]] = rr.reduced.at(i, m.cols());
  }
  return x;
}

/// For each w, coordinates c with w = sum c_j basis_j modulo `modulo`, or
/// nullopt when w is not in span(basis) + modulo. The basis must be
/// independent modulo the subspace.
template <class K>
std::vector<std::optional<std::vector<typename K::value_type>>> quotient_representation(
    const std::vector<SparseVector<typename K::value_type>>& vectors, const Subspace<K>& modulo,
    const std::vector<SparseVector<typename K::value_type>>& basis) {
  using V = typename K::value_type;
  const K& F = modulo.field;
  const std::size_t n = modulo.ambient, h = basis.size(), r = modulo.dim();
  auto check = [&](const SparseVector<V>& v) {
    if (!v.empty() && v.back().index >= n) throw DimensionMismatch("quotient_representation: ambient mismatch");
  };
  std::vector<SparseVector<V>> cols;
  cols.reserve(h + r + vectors.size());
  for (const auto& b : basis) check(b), cols.push_back(b);
  for (const auto& b : modulo.basis) cols.push_back(b);
  for (const auto& w : vectors) check(w), cols.push_back(w);
  auto aug = Matrix<K>::from_columns(F, n, std::move(cols));
  auto rr = rref(aug);
  const std::size_t g = h + r;
  std::size_t gpiv = 0;
  while (gpiv < rr.pivots.size() && rr.pivots[gpiv] < g) ++gpiv;
  if (gpiv != g) throw DimensionMismatch("quotient_representation: basis is dependent modulo the subspace");
  Matrix<K> rows = rr.reduced.transpose();
  std::vector<std::optional<std::vector<V>>> out;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const std::size_t c = g + k;
    bool consistent = true;
    for (std::size_t i = gpiv; i < rr.pivots.size() && consistent; ++i)
      if (!F.is_zero(rr.reduced.at(i, c))) consistent = false;
    if (!consistent) {
      out.emplace_back(std::nullopt);
      continue;
    }
    std::vector<V> coords(h, F.zero());
    for (std::size_t i = 0; i < h; ++i) coords[i] = rr.reduced.at(i, c);
    out.emplace_back(std::move(coords));
  }
  return out;
}

/// Inverse of a square matrix; throws VerificationError if singular.
template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const K& F = m.field();
  std::vector<SparseVector<typename K::value_type>> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(m.column_vector(j));
  for (std::size_t j = 0; j < n; ++j) cols.push_back({{index_t(j), F.one()}});
  auto rr = rref(Matrix<K>::from_columns(F, n, std::move(cols)));
  if (rr.pivots.size() < n || (n > 0 && rr.pivots[n - 1] != n - 1))
    throw VerificationError("matrix is not invertible");
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& e : rr.reduced.column(n + j))
      if (e.index < n) t.push_back({e.index, index_t(j), e.value});
  return Matrix<K>::from_triplets(F, n, n, std::move(t));
}

/// Characteristic polynomial det(xI - m), coefficients from degree 0 up
/// (monic). Hessenberg reduction followed by the usual recurrence.
template <class K>
std::vector<typename K::value_type> charpoly(const Matrix<K>& m) {
  using V = typename K::value_type;
  const K& F = m.field();
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("charpoly needs a square matrix");
  auto h = m.to_dense();
  for (std::size_t c = 1; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && F.is_zero(h[piv][c - 1])) ++piv;
    if (piv == n) continue;
    if (piv != c) {
      std::swap(h[piv], h[c]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][c]);
    }
    const V t = F.inv(h[c][c - 1]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (F.is_zero(h[r][c - 1])) continue;
      const V u = F.mul(h[r][c - 1], t);
      for (std::size_t k = 0; k < n; ++k) h[r][k] = F.sub(h[r][k], F.mul(u, h[c][k]));
      for (std::size_t k = 0; k < n; ++k) h[k][c] = F.add(h[k][c], F.mul(u, h[k][r]));
    }
  }
  std::vector<std::vector<V>> p{{F.one()}};
  for (std::size_t k = 0; k < n; ++k) {
    // p_{k+1} = (x - h_kk) p_k - sum_i t_i h_{k-i,k} p_{k-i}
    std::vector<V> next(k + 2, F.zero());
    for (std::size_t j = 0; j <= k; ++j) {
      next[j + 1] = F.add(next[j + 1], p[k][j]);
      next[j] = F.sub(next[j], F.mul(h[k][k], p[k][j]));
    }
    V t = F.one();
    for (std::size_t i = 1; i <= k; ++i) {
      t = F.mul(t, h[k - i + 1][k - i]);
      if (F.is_zero(t)) break;
      const V c = F.mul(t, h[k - i][k]);
      if (F.is_zero(c)) continue;
      for (std::size_t j = 0; j < p[k - i].size(); ++j) next[j] = F.sub(next[j], F.mul(c, p[k - i][j]));
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

/// Dense conversions between coordinate vectors and sparse vectors.
template <class K>
SparseVector<typename K::value_type> to_sparse(const K& field, const std::vector<typename K::value_type>& v) {
  SparseVector<typename K::value_type> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!field.is_zero(v[i])) out.push_back({index_t(i), v[i]});
  return out;
}

template <class K>
std::vector<typename K::value_type> to_dense(const K& field, const SparseVector<typename K::value_type>& v,
                                             std::size_t n) {
  std::vector<typename K::value_type> out(n, field.zero());
  for (const auto& e : v) out[e.index] = e.value;
  return out;
}

}  // namespace hochmod
