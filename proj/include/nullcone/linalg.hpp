#ifndef NULLCONE_LINALG_HPP
#define NULLCONE_LINALG_HPP

#include "nullcone/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nullcone {

using Vector = std::vector<Rational>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over the rationals. Indices are 0-based.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); });
  }

  Rational trace() const {
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& bkj = b(k, j);
          if (!bkj.is_zero()) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum: shapes differ");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns pivot columns in order.
/// Pivots are taken at the first column with a nonzero entry at or below the
/// current row, so the output depends only on the input rows.
inline std::vector<std::size_t> row_reduce(std::vector<Vector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Rational inv = rows[r][c].reciprocal();
    for (std::size_t j = c; j < ncols; ++j)
      if (!rows[r][j].is_zero()) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline std::size_t rank(const Matrix& m) {
  std::vector<Vector> rows(m.rows(), Vector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return row_reduce(rows, m.cols()).size();
}

inline Rational determinant(Matrix m) {
  if (!m.square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Rational();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rational inv = m(c, c).reciprocal();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Rational f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Linear subspace of Q^n held by an echelon basis (rows in reduced form).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  /// Span of arbitrary vectors; the stored basis is the reduced echelon form.
  static Subspace span(std::size_t ambient_dim, std::vector<Vector> vectors) {
    for (const auto& v : vectors)
      if (v.size() != ambient_dim) throw DimensionMismatch("subspace generator has wrong length");
    Subspace s(ambient_dim);
    row_reduce(vectors, ambient_dim);
    s.basis_ = std::move(vectors);
    return s;
  }

  /// Span of the given 1-based coordinate axes.
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<int>& indices) {
    std::vector<Vector> vs;
    for (int i : indices) {
      if (i < 1 || static_cast<std::size_t>(i) > ambient_dim) throw std::out_of_range("coordinate index out of range");
      Vector v(ambient_dim);
      v[i - 1] = 1;
      vs.push_back(std::move(v));
    }
    return span(ambient_dim, std::move(vs));
  }

  static Subspace whole(std::size_t ambient_dim) {
    std::vector<int> idx;
    for (std::size_t i = 1; i <= ambient_dim; ++i) idx.push_back(static_cast<int>(i));
    return coordinate(ambient_dim, idx);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }

  bool contains(const Vector& v) const {
    std::vector<Vector> rows = basis_;
    rows.push_back(v);
    return row_reduce(rows, ambient_).size() == basis_.size();
  }

  bool contains(const Subspace& other) const {
    std::vector<Vector> rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return row_reduce(rows, ambient_).size() == basis_.size();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
};

/// Incremental reduced echelon basis. Vectors are inserted one at a time and
/// reduced against the pivots found so far; useful when spanning sets are
/// large but the span is small.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient_dim) : n_(ambient_dim), pivot_row_(ambient_dim, npos) {}

  std::size_t dim() const { return rows_.size(); }

  /// Returns true if v was independent of the current span.
  bool insert(Vector v) {
    if (v.size() != n_) throw DimensionMismatch("echelon insert: vector has wrong length");
    for (std::size_t c = 0; c < n_; ++c) {
      if (v[c].is_zero() || pivot_row_[c] == npos) continue;
      Rational f = v[c];
      const Vector& r = rows_[pivot_row_[c]];
      for (std::size_t j = 0; j < n_; ++j)
        if (!r[j].is_zero()) v[j] -= f * r[j];
    }
    std::size_t lead = 0;
    while (lead < n_ && v[lead].is_zero()) ++lead;
    if (lead == n_) return false;
    Rational inv = v[lead].reciprocal();
    for (std::size_t j = lead; j < n_; ++j)
      if (!v[j].is_zero()) v[j] *= inv;
    for (auto& r : rows_) {
      if (r[lead].is_zero()) continue;
      Rational f = r[lead];
      for (std::size_t j = 0; j < n_; ++j)
        if (!v[j].is_zero()) r[j] -= f * v[j];
    }
    pivot_row_[lead] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
  }

  Subspace subspace() const {
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t c = 0; c < n_; ++c)
      if (pivot_row_[c] != npos) order.emplace_back(c, pivot_row_[c]);
    std::vector<Vector> sorted;
    for (const auto& [c, r] : order) sorted.push_back(rows_[r]);
    return Subspace::span(n_, std::move(sorted));
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivot_row_;
};

/// Row-oriented sparse matrix; entries keyed by (row, col), 0-based.
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : rows_(n), cols_(n) {}

  static SparseMatrix from_dense(const Matrix& m) {
    if (!m.square()) throw DimensionMismatch("sparse matrices here are square");
    SparseMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) s.rows_[i][j] = m(i, j);
    return s;
  }

  std::size_t size() const { return cols_; }
  const Row& row(std::size_t i) const { return rows_[i]; }

  void add(std::size_t i, std::size_t j, const Rational& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = rows_[i].try_emplace(j, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) rows_[i].erase(it);
    }
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  Rational trace() const {
    Rational t;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto it = rows_[i].find(i);
      if (it != rows_[i].end()) t += it->second;
    }
    return t;
  }

  Matrix to_dense() const {
    Matrix m(rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [j, v] : rows_[i]) m(i, j) = v;
    return m;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_.size()) throw DimensionMismatch("sparse product: inner dimensions differ");
    SparseMatrix c(a.rows_.size());
    for (std::size_t i = 0; i < a.rows_.size(); ++i)
      for (const auto& [k, aik] : a.rows_[i])
        for (const auto& [j, bkj] : b.rows_[k]) c.add(i, j, aik * bkj);
    return c;
  }

 private:
  std::vector<Row> rows_;
  std::size_t cols_ = 0;
};

}  // namespace nullcone

#endif  // NULLCONE_LINALG_HPP
