#pragma once

// Ranges, nullspaces and projections in F^n, and the operator-level
// characterizations of (B,C)-invertibility and invertibility along B in terms
// of them.
//
// Every Subspace is stored in a canonical basis (the transpose of the nonzero
// rows of rref(M^T), i.e. a column-reduced echelon basis), so two subspaces
// are equal exactly when their bases compare equal entry by entry.

#include <cstddef>
#include <optional>

#include "bcpolar/bc.hpp"
#include "bcpolar/matrix.hpp"
#include "bcpolar/reduction.hpp"

namespace bcpolar {

template <ExactField F>
class Subspace {
 public:
  /// Span of the columns of `generators`.
  static Subspace span_of(const Matrix<F>& generators) {
    const auto red = rref(generators.transpose());
    const std::size_t d = red.pivots.size();
    return Subspace(generators.rows(), red.reduced.block(0, d, 0, generators.rows()).transpose());
  }

  static Subspace zero(const F& field, std::size_t ambient) { return Subspace(ambient, Matrix<F>(field, ambient, 0)); }
  static Subspace full(const F& field, std::size_t ambient) {
    return Subspace(ambient, Matrix<F>::identity(field, ambient));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix<F>& basis() const { return basis_; }

  bool contains(const Matrix<F>& vectors) const {
    require_ambient(vectors.rows());
    return solve_right(basis_, vectors).has_value();
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Subspace(std::size_t ambient, Matrix<F> basis) : ambient_(ambient), basis_(std::move(basis)) {}

  void require_ambient(std::size_t n) const {
    if (n != ambient_) throw dimension_error("subspace ambient dimensions differ");
  }

  std::size_t ambient_;
  Matrix<F> basis_;
};

template <ExactField F>
Subspace<F> range_of(const Matrix<F>& a) {
  return Subspace<F>::span_of(a);
}

template <ExactField F>
Subspace<F> nullspace_of(const Matrix<F>& a) {
  return Subspace<F>::span_of(kernel_basis(a));
}

namespace detail {
template <ExactField F>
void same_ambient(const Subspace<F>& u, const Subspace<F>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw dimension_error("subspaces live in different ambient spaces");
}
}  // namespace detail

template <ExactField F>
Subspace<F> sum(const Subspace<F>& u, const Subspace<F>& v) {
  detail::same_ambient(u, v);
  return Subspace<F>::span_of(hconcat(u.basis(), v.basis()));
}

template <ExactField F>
Subspace<F> intersect(const Subspace<F>& u, const Subspace<F>& v) {
  detail::same_ambient(u, v);
  // U x = V y  <=>  [U | -V] (x; y) = 0
  const auto kernel = kernel_basis(hconcat(u.basis(), -v.basis()));
  return Subspace<F>::span_of(u.basis() * kernel.block(0, u.dim(), 0, kernel.cols()));
}

template <ExactField F>
bool is_complementary(const Subspace<F>& u, const Subspace<F>& v) {
  detail::same_ambient(u, v);
  return u.dim() + v.dim() == u.ambient_dim() && intersect(u, v).dim() == 0;
}

template <ExactField F>
struct Projector {
  Matrix<F> matrix;
  Subspace<F> range;
  Subspace<F> kernel;
};

/// The idempotent with range U and kernel V, from P [U | V] = [U | 0].
/// nullopt unless U ⊕ V is the whole space.
template <ExactField F>
std::optional<Projector<F>> projector_onto_along(const Subspace<F>& u, const Subspace<F>& v) {
  if (!is_complementary(u, v)) return std::nullopt;
  const auto& field = u.basis().field();
  const auto frame = hconcat(u.basis(), v.basis());
  const auto image = hconcat(u.basis(), Matrix<F>(field, u.ambient_dim(), v.dim()));
  auto p = solve_left(frame, image);
  detail::ensure(p.has_value(), "complementary frame is singular");
  detail::ensure(is_idempotent(*p) && range_of(*p) == u && nullspace_of(*p) == v, "projector has wrong range or kernel");
  return Projector<F>{std::move(*p), u, v};
}

/// A split as a 2x2 operator matrix from R(P) ⊕ N(P) to R(Q) ⊕ N(Q).
template <ExactField F>
struct BlockRepresentation {
  Matrix<F> qap;    ///< Q A P
  Matrix<F> qa_ip;  ///< Q A (I - P)
  Matrix<F> iq_ap;  ///< (I - Q) A P
  Matrix<F> iq_a_ip;
};

template <ExactField F>
struct OperatorVerdicts {
  bool invertible = false;   ///< N(B) = N(CAB) and R(C) = R(CAB)
  bool polar = false;        ///< spectral idempotents exist
  bool projectors = false;   ///< R(B) ⊕ N(CA) = X and R(AB) ⊕ N(C) = X
  std::optional<Projector<F>> p;  ///< onto R(B) along N(CA)
  std::optional<Projector<F>> q;  ///< onto R(AB) along N(C)
  std::optional<BlockRepresentation<F>> blocks;

  bool agree() const { return invertible == polar && polar == projectors; }
};

/// Three independent decisions of (B,C)-invertibility of A: range/nullspace
/// equalities, the polarity conditions, and existence of the two projectors.
template <ExactField F>
OperatorVerdicts<F> operator_characterization(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "operator_characterization");
  const auto ca = c * a;
  const auto ab = a * b;
  const auto cab = ca * b;
  OperatorVerdicts<F> out;
  out.invertible = nullspace_of(b) == nullspace_of(cab) && range_of(c) == range_of(cab);
  out.polar = solve_bc_polar(a, b, c).has_value();
  out.p = projector_onto_along(range_of(b), nullspace_of(ca));
  out.q = projector_onto_along(range_of(ab), nullspace_of(c));
  out.projectors = out.p.has_value() && out.q.has_value();
  if (out.projectors) {
    const auto one = identity_like(a);
    const auto& p = out.p->matrix;
    const auto& q = out.q->matrix;
    out.blocks = BlockRepresentation<F>{q * a * p, q * a * (one - p), (one - q) * a * p, (one - q) * a * (one - p)};
  }
  return out;
}

struct AlongVerdicts {
  bool invertible_along = false;  ///< A is invertible along B
  bool polar_along = false;       ///< A is polar along B
  bool projectors = false;        ///< R(B) ⊕ N(BA) = X and R(AB) ⊕ N(B) = X
  bool restriction = false;       ///< R(AB) ⊕ N(B) = X and A|R(B) : R(B) -> R(AB) invertible
  /// One projector P with N(P) = N(BA) = N(B) and R(P) = R(AB) = R(B).
  /// Sufficient but not necessary (a = diag(1,0), b = [[1,1],[0,0]] is
  /// invertible along b with N(ba) != N(b)), so it is reported, not compared.
  bool single_projector = false;

  bool agree() const {
    return invertible_along == polar_along && polar_along == projectors && projectors == restriction;
  }
  friend bool operator==(const AlongVerdicts&, const AlongVerdicts&) = default;
};

/// Four independent decisions of invertibility of A along B: the (B,B)-inverse,
/// polarity along B, the two projectors onto R(B) along N(BA) and onto R(AB)
/// along N(B), and invertibility of A restricted to R(B). The restricted
/// operator is expressed in the canonical bases: A basis(R(B)) = basis(R(AB)) M.
template <ExactField F>
AlongVerdicts along_operator_characterization(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_square_family<F>({&a, &b}, "along_operator_characterization");
  AlongVerdicts out;
  out.invertible_along = inverse_along(a, b).has_value();
  out.polar_along = solve_polar_along(a, b).has_value();

  const auto rb = range_of(b);
  const auto nb = nullspace_of(b);
  const auto rab = range_of(a * b);
  const auto nba = nullspace_of(b * a);
  out.projectors = is_complementary(rb, nba) && is_complementary(rab, nb);
  out.single_projector = nba == nb && rab == rb && is_complementary(rb, nb);

  if (is_complementary(rab, nb)) {
    auto coords = solve_right(rab.basis(), a * rb.basis());
    detail::ensure(coords.has_value(), "A R(B) is not contained in R(AB)");
    out.restriction = is_invertible(*coords);
  }
  return out;
}

}  // namespace bcpolar
