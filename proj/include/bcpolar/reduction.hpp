#pragma once

// Row reduction and everything built on it: rank, linear solves, kernels,
// rank factorizations and one-sided inverses.
//
// Conventions shared by every routine here:
//  * pivot = first nonzero entry scanning down the current column;
//  * solvers set every free variable to zero, so all results are canonical
//    and reproducible bit-for-bit;
//  * one-sided inverses come from direct solves, never from Gram matrices
//    (F^T F can be singular over F_p even when F has full column rank).

#include <cstddef>
#include <optional>
#include <vector>

#include "bcpolar/matrix.hpp"

namespace bcpolar {

namespace detail {

/// Gauss-Jordan on `m` in place, pivoting only within the first `pivot_cols`
/// columns; the remaining columns ride along. Returns the pivot columns.
template <ExactField F>
std::vector<std::size_t> reduce_in_place(Matrix<F>& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < rows; ++col) {
    std::size_t found = row;
    while (found < rows && m(found, col).is_zero()) ++found;
    if (found == rows) continue;
    if (found != row)
      for (std::size_t j = col; j < cols; ++j) std::swap(m(found, j), m(row, j));
    const auto inv = m(row, col).inverse();
    for (std::size_t j = col; j < cols; ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const auto factor = m(i, col);
      for (std::size_t j = col; j < cols; ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <ExactField F>
struct RrefResult {
  Matrix<F> reduced;                 ///< R, reduced row echelon form
  std::vector<std::size_t> pivots;   ///< strictly increasing pivot columns
  Matrix<F> transform;               ///< invertible E with E * M = R
};

template <ExactField F>
RrefResult<F> rref(const Matrix<F>& m) {
  Matrix<F> aug = hconcat(m, Matrix<F>::identity(m.field(), m.rows()));
  auto pivots = detail::reduce_in_place(aug, m.cols());
  return {aug.block(0, m.rows(), 0, m.cols()), std::move(pivots), aug.block(0, m.rows(), m.cols(), m.rows())};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  Matrix<F> work = m;
  return detail::reduce_in_place(work, work.cols()).size();
}

/// X with A * X = B, free variables zero; nullopt iff the system is inconsistent.
template <ExactField F>
std::optional<Matrix<F>> solve_right(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw dimension_error("solve_right: " + Matrix<F>::shape(a) + " vs " + Matrix<F>::shape(b));
  Matrix<F> aug = hconcat(a, b);
  const auto pivots = detail::reduce_in_place(aug, a.cols());
  const std::size_t r = pivots.size();
  for (std::size_t i = r; i < aug.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!aug(i, a.cols() + j).is_zero()) return std::nullopt;
  Matrix<F> x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = aug(i, a.cols() + j);
  return x;
}

/// X with X * A = B, free variables zero; nullopt iff inconsistent.
template <ExactField F>
std::optional<Matrix<F>> solve_left(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw dimension_error("solve_left: " + Matrix<F>::shape(a) + " vs " + Matrix<F>::shape(b));
  auto xt = solve_right(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

/// Columns form a basis of N(M); M.cols() x (M.cols() - rank).
template <ExactField F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  Matrix<F> work = m;
  const auto pivots = detail::reduce_in_place(work, work.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Matrix<F> basis(m.field(), m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = m.field().one();
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -work(i, f);
  }
  return basis;
}

/// Pivot columns of M; a basis of R(M).
template <ExactField F>
Matrix<F> column_basis(const Matrix<F>& m) {
  Matrix<F> work = m;
  const auto pivots = detail::reduce_in_place(work, work.cols());
  return m.select_columns(pivots);
}

template <ExactField F>
struct RankFactorization {
  Matrix<F> left;    ///< n x r, full column rank
  Matrix<F> right;   ///< r x m, full row rank
  std::size_t rank;
};

/// M = left * right with left = pivot columns of M, right = nonzero rows of rref(M).
template <ExactField F>
RankFactorization<F> rank_factorize(const Matrix<F>& m) {
  Matrix<F> work = m;
  const auto pivots = detail::reduce_in_place(work, work.cols());
  const std::size_t r = pivots.size();
  return {m.select_columns(pivots), work.block(0, r, 0, m.cols()), r};
}

/// L with L * F = I; nullopt unless F has full column rank.
template <ExactField F>
std::optional<Matrix<F>> left_inverse(const Matrix<F>& f) {
  if (rank(f) != f.cols()) return std::nullopt;
  return solve_left(f, Matrix<F>::identity(f.field(), f.cols()));
}

/// R with G * R = I; nullopt unless G has full row rank.
template <ExactField F>
std::optional<Matrix<F>> right_inverse(const Matrix<F>& g) {
  if (rank(g) != g.rows()) return std::nullopt;
  return solve_right(g, Matrix<F>::identity(g.field(), g.rows()));
}

template <ExactField F>
std::optional<Matrix<F>> two_sided_inverse(const Matrix<F>& m) {
  if (!m.is_square() || rank(m) != m.rows()) return std::nullopt;
  return solve_right(m, Matrix<F>::identity(m.field(), m.rows()));
}

template <ExactField F>
bool is_invertible(const Matrix<F>& m) {
  return m.is_square() && rank(m) == m.rows();
}

}  // namespace bcpolar
