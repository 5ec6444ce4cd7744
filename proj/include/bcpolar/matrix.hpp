#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcpolar/errors.hpp"
#include "bcpolar/field.hpp"

namespace bcpolar {

/// Dense row-major matrix over an exact field. Shapes with a zero dimension
/// (n x 0, 0 x m) are valid and behave as the empty linear maps they denote,
/// so rank-0 corner cases need no special handling downstream.
template <ExactField F>
class Matrix {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Matrix() : Matrix(F{}, 0, 0) {}
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw dimension_error("entry count does not match shape");
    for (const auto& x : data_)
      if (!field_.contains(x)) throw field_error("entry outside the matrix field");
  }

  /// Small integer literals, mostly for tests and examples.
  static Matrix from_rows(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw dimension_error("ragged row list");
      std::size_t j = 0;
      for (std::int64_t v : row) m(i, j++) = field.from_integer(v);
      ++i;
    }
    return m;
  }

  static Matrix zero(F field, std::size_t rows, std::size_t cols) { return Matrix(std::move(field), rows, cols); }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const value_type> entries() const { return data_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_identity() const { return is_square() && *this == identity(field_, rows_); }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix scale(const value_type& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x * s;
    return out;
  }

  Matrix pow(std::size_t k) const {
    if (!is_square()) throw dimension_error("pow of a non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  Matrix column(std::size_t j) const { return select_columns(std::vector<std::size_t>{j}); }

  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix out(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
    return out;
  }

  /// Rows [first, first + count) and columns [first_col, first_col + col_count).
  Matrix block(std::size_t first, std::size_t count, std::size_t first_col, std::size_t col_count) const {
    if (first + count > rows_ || first_col + col_count > cols_) throw dimension_error("block out of range");
    Matrix out(field_, count, col_count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < col_count; ++j) out(i, j) = (*this)(first + i, first_col + j);
    return out;
  }

  /// [lhs | rhs]
  friend Matrix hconcat(const Matrix& lhs, const Matrix& rhs) {
    same_field(lhs, rhs);
    if (lhs.rows_ != rhs.rows_) throw dimension_error("hconcat: row counts differ");
    Matrix out(lhs.field_, lhs.rows_, lhs.cols_ + rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i) {
      for (std::size_t j = 0; j < lhs.cols_; ++j) out(i, j) = lhs(i, j);
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, lhs.cols_ + j) = rhs(i, j);
    }
    return out;
  }

  /// [top ; bottom]
  friend Matrix vconcat(const Matrix& top, const Matrix& bottom) {
    same_field(top, bottom);
    if (top.cols_ != bottom.cols_) throw dimension_error("vconcat: column counts differ");
    Matrix out(top.field_, top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
    return out;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    same_shape(x, y, "add");
    Matrix out = x;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += y.data_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    same_shape(x, y, "sub");
    Matrix out = x;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= y.data_[k];
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    same_field(x, y);
    if (x.cols_ != y.rows_)
      throw dimension_error("mul: " + shape(x) + " times " + shape(y));
    Matrix out(x.field_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const auto& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m.field_.format(m(i, j));
      os << ']';
    }
    return os << ']';
  }

  static std::string shape(const Matrix& m) { return std::to_string(m.rows_) + "x" + std::to_string(m.cols_); }

 private:
  static void same_field(const Matrix& x, const Matrix& y) {
    if (!(x.field_ == y.field_)) throw field_error("field mismatch: " + x.field_.descriptor() + " vs " + y.field_.descriptor());
  }
  static void same_shape(const Matrix& x, const Matrix& y, const char* op) {
    same_field(x, y);
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw dimension_error(std::string(op) + ": " + shape(x) + " vs " + shape(y));
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

using QMatrix = Matrix<RationalField>;
using FpMatrix = Matrix<PrimeField>;

template <ExactField F>
bool is_idempotent(const Matrix<F>& m) {
  return m.is_square() && m * m == m;
}

template <ExactField F>
bool commutes(const Matrix<F>& x, const Matrix<F>& y) {
  return x * y == y * x;
}

template <ExactField F>
bool is_nilpotent(const Matrix<F>& m) {
  if (!m.is_square()) throw dimension_error("nilpotency of a non-square matrix");
  return m.pow(m.rows()).is_zero();
}

/// Identity of the same size and field as a square matrix.
template <ExactField F>
Matrix<F> identity_like(const Matrix<F>& m) {
  return Matrix<F>::identity(m.field(), m.rows());
}

}  // namespace bcpolar
