#pragma once

// Linear membership machinery. Conditions such as "p lies in b R c a" or
// "p commutes with everything that commutes with a" are linear in an unknown
// matrix, so they reduce to one stacked linear system via vectorization.
//
// Vectorization is column-stacking: vec(X)[j * rows + i] = X(i, j), so that
// vec(B X C) = (C^T kron B) vec(X).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcpolar/matrix.hpp"
#include "bcpolar/reduction.hpp"

namespace bcpolar {

template <ExactField F>
Matrix<F> kron(const Matrix<F>& x, const Matrix<F>& y) {
  if (!(x.field() == y.field())) throw field_error("kron: field mismatch");
  Matrix<F> out(x.field(), x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const auto& s = x(i, j);
      if (s.is_zero()) continue;
      for (std::size_t k = 0; k < y.rows(); ++k)
        for (std::size_t l = 0; l < y.cols(); ++l) out(i * y.rows() + k, j * y.cols() + l) = s * y(k, l);
    }
  return out;
}

template <ExactField F>
Matrix<F> vec(const Matrix<F>& m) {
  Matrix<F> out(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j * m.rows() + i, 0) = m(i, j);
  return out;
}

/// Inverse of vec for column `col` of `v`.
template <ExactField F>
Matrix<F> unvec(const Matrix<F>& v, std::size_t rows, std::size_t cols, std::size_t col = 0) {
  if (v.rows() != rows * cols) throw dimension_error("unvec: length does not match shape");
  Matrix<F> out(v.field(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = v(j * rows + i, col);
  return out;
}

/// One term L * X * R of a linear matrix equation.
template <ExactField F>
struct SandwichTerm {
  Matrix<F> left;
  Matrix<F> right;
};

/// sum_i terms[i].left * X * terms[i].right = target, in an unknown X.
template <ExactField F>
struct LinearEquation {
  std::vector<SandwichTerm<F>> terms;
  Matrix<F> target;
};

/// Certificate that left * X * right = target. Re-verified on construction, so
/// holding one is proof of the membership target in left R right.
template <ExactField F>
class SandwichWitness {
 public:
  SandwichWitness(Matrix<F> solution, Matrix<F> left, Matrix<F> right, Matrix<F> target)
      : solution_(std::move(solution)), left_(std::move(left)), right_(std::move(right)), target_(std::move(target)) {
    detail::ensure(left_ * solution_ * right_ == target_, "sandwich witness does not satisfy B X C = P");
  }

  const Matrix<F>& solution() const { return solution_; }
  const Matrix<F>& left() const { return left_; }
  const Matrix<F>& right() const { return right_; }
  const Matrix<F>& target() const { return target_; }

 private:
  Matrix<F> solution_;
  Matrix<F> left_;
  Matrix<F> right_;
  Matrix<F> target_;
};

/// Canonical common solution X (rows x cols) of several linear equations, or
/// nullopt if the system is inconsistent.
template <ExactField F>
std::optional<Matrix<F>> solve_linear_system(std::span<const LinearEquation<F>> equations, std::size_t rows,
                                             std::size_t cols) {
  if (equations.empty() || equations.front().terms.empty()) throw dimension_error("empty linear system");
  const F& field = equations.front().terms.front().left.field();
  Matrix<F> system(field, 0, rows * cols);
  Matrix<F> rhs(field, 0, 1);
  for (const auto& eq : equations) {
    Matrix<F> block(field, eq.target.rows() * eq.target.cols(), rows * cols);
    for (const auto& term : eq.terms) {
      if (term.left.cols() != rows || term.right.rows() != cols)
        throw dimension_error("linear system: term does not act on a " + std::to_string(rows) + "x" +
                              std::to_string(cols) + " unknown");
      if (term.left.rows() != eq.target.rows() || term.right.cols() != eq.target.cols())
        throw dimension_error("sandwich: " + Matrix<F>::shape(term.left) + " X " + Matrix<F>::shape(term.right) +
                              " cannot equal " + Matrix<F>::shape(eq.target));
      block = block + kron(term.right.transpose(), term.left);
    }
    system = vconcat(system, block);
    rhs = vconcat(rhs, vec(eq.target));
  }
  auto x = solve_right(system, rhs);
  if (!x) return std::nullopt;
  return unvec(*x, rows, cols);
}

template <ExactField F>
std::optional<SandwichWitness<F>> solve_sandwich(const Matrix<F>& left, const Matrix<F>& right, const Matrix<F>& target) {
  const LinearEquation<F> eq{{{left, right}}, target};
  auto x = solve_linear_system(std::span<const LinearEquation<F>>(&eq, 1), left.cols(), right.rows());
  if (!x) return std::nullopt;
  return SandwichWitness<F>(std::move(*x), left, right, target);
}

/// target in left * R * right.
template <ExactField F>
bool in_set(const Matrix<F>& target, const Matrix<F>& left, const Matrix<F>& right) {
  return solve_sandwich(left, right, target).has_value();
}

/// Basis of comm(A) = { X : A X = X A }.
template <ExactField F>
std::vector<Matrix<F>> commutant_basis(const Matrix<F>& a) {
  if (!a.is_square()) throw dimension_error("commutant of a non-square matrix");
  const std::size_t n = a.rows();
  const auto id = Matrix<F>::identity(a.field(), n);
  const auto commutator = kron(id, a) - kron(a.transpose(), id);
  const auto kernel = kernel_basis(commutator);
  std::vector<Matrix<F>> basis;
  basis.reserve(kernel.cols());
  for (std::size_t k = 0; k < kernel.cols(); ++k) basis.push_back(unvec(kernel, n, n, k));
  return basis;
}

/// P in comm^2(A). Checking a basis of comm(A) suffices by linearity.
template <ExactField F>
bool in_double_commutant(const Matrix<F>& p, const Matrix<F>& a) {
  if (!p.is_square() || !a.is_square()) throw dimension_error("double commutant needs square matrices");
  if (p.rows() != a.rows()) throw dimension_error("double commutant: sizes differ");
  for (const auto& y : commutant_basis(a))
    if (!commutes(p, y)) return false;
  return true;
}

}  // namespace bcpolar
