#pragma once

// Classical generalized inverses: inner, group, Drazin and Moore-Penrose.
//
// Group and Drazin inverses are computed through the (b,c)-inverse formula
// b (c a b)^- c with b = c = a^k instead of a Jordan form, which keeps the
// computation rational. In a matrix algebra quasinilpotent means nilpotent
// and the Jacobson radical is zero, so "polar", "quasipolar" and
// "pseudopolar" coincide; verify_polar is the single check for all three.

#include <cstddef>
#include <optional>

#include "bcpolar/linmem.hpp"
#include "bcpolar/matrix.hpp"
#include "bcpolar/reduction.hpp"

namespace bcpolar {

/// Canonical inner inverse X (A X A = A): right_inverse(G) * left_inverse(F)
/// for the rank factorization A = F G. Every matrix over a field is regular.
template <ExactField F>
Matrix<F> inner_inverse(const Matrix<F>& a) {
  const auto fac = rank_factorize(a);
  auto l = left_inverse(fac.left);
  auto r = right_inverse(fac.right);
  detail::ensure(l && r, "rank factors lack one-sided inverses");
  Matrix<F> x = *r * *l;
  detail::ensure(a * x * a == a, "inner inverse fails A X A = A");
  return x;
}

template <ExactField F>
bool is_group_inverse(const Matrix<F>& a, const Matrix<F>& x) {
  return a * x * a == a && x * a * x == x && commutes(a, x);
}

/// a^# = A (A^3)^- A; exists iff rank(A) = rank(A^2).
template <ExactField F>
std::optional<Matrix<F>> group_inverse(const Matrix<F>& a) {
  if (!a.is_square()) throw dimension_error("group inverse of a non-square matrix");
  const auto a2 = a * a;
  if (rank(a) != rank(a2)) return std::nullopt;
  Matrix<F> x = a * inner_inverse(a2 * a) * a;
  detail::ensure(is_group_inverse(a, x), "group inverse identities fail");
  return x;
}

template <ExactField F>
struct DrazinResult {
  Matrix<F> d_inverse;
  std::size_t index;
  Matrix<F> spectral_idempotent;  ///< I - A A^D
};

/// Smallest k >= 0 with rank(A^k) = rank(A^{k+1}).
template <ExactField F>
std::size_t drazin_index(const Matrix<F>& a) {
  if (!a.is_square()) throw dimension_error("index of a non-square matrix");
  Matrix<F> power = identity_like(a);
  std::size_t previous = a.rows();
  for (std::size_t k = 0; k <= a.rows(); ++k) {
    const auto next = power * a;
    const std::size_t r = rank(next);
    if (r == previous) return k;
    previous = r;
    power = next;
  }
  return a.rows();
}

template <ExactField F>
DrazinResult<F> drazin(const Matrix<F>& a) {
  const std::size_t k = drazin_index(a);
  const auto ak = a.pow(k);
  Matrix<F> x = ak * inner_inverse(a.pow(2 * k + 1)) * ak;
  detail::ensure(commutes(a, x), "Drazin inverse does not commute with A");
  detail::ensure(x * a * x == x, "Drazin inverse fails X A X = X");
  detail::ensure(a.pow(k + 1) * x == ak, "Drazin inverse fails A^{k+1} X = A^k");
  auto pi = identity_like(a) - a * x;
  return {std::move(x), k, std::move(pi)};
}

template <ExactField F>
bool satisfies_penrose(const Matrix<F>& a, const Matrix<F>& x) {
  return a * x * a == a && x * a * x == x && (a * x).transpose() == a * x && (x * a).transpose() == x * a;
}

/// A^+ = A^T (A^T A A^T)^- A^T. Only over Q: over F_p the transpose involution
/// is not positive and the inverse may not exist.
template <ExactField F>
Matrix<F> moore_penrose(const Matrix<F>& a) {
  if constexpr (!F::characteristic_zero) {
    throw field_error("Moore-Penrose inverse requires the rational field, got " + a.field().descriptor());
  } else {
    const auto at = a.transpose();
    Matrix<F> x = at * inner_inverse(at * a * at) * at;
    detail::ensure(satisfies_penrose(a, x), "Moore-Penrose identities fail");
    return x;
  }
}

/// P is the spectral idempotent of A: P^2 = P, P in comm^2(A), A + P
/// invertible and A P nilpotent.
template <ExactField F>
bool verify_polar(const Matrix<F>& a, const Matrix<F>& p) {
  if (!a.is_square() || !p.is_square()) throw dimension_error("verify_polar needs square matrices");
  if (a.rows() != p.rows()) throw dimension_error("verify_polar: sizes differ");
  return is_idempotent(p) && is_invertible(a + p) && is_nilpotent(a * p) && in_double_commutant(p, a);
}

}  // namespace bcpolar
