#pragma once

// (b,c)-inverses and the polarity notions that characterize them.
//
// For a, b, c in the ring of n x n matrices, a is (b,c)-invertible when some y
// satisfies y in bR ∩ Rc, y a b = b and c a y = c. Over a field this happens
// iff b in R(cab) and c in (cab)R, and then y = b (cab)^- c for any inner
// inverse (cab)^-. The left and right (b,c)-spectral idempotents are p = y a
// and q = a y; a is (b,c)-polar iff such idempotents exist.
//
// Every constructor in this file is proof-carrying: a BcResult or
// DualBcResult is only returned after all of its defining identities have
// been re-checked, and a failed check raises contract_violation.
//
// Degenerate case: with b = c = 0 the zero matrix is the (0,0)-inverse, since
// every defining equation reads 0 = 0.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>

#include "bcpolar/classic.hpp"
#include "bcpolar/linmem.hpp"
#include "bcpolar/matrix.hpp"
#include "bcpolar/reduction.hpp"

namespace bcpolar {

template <ExactField F>
struct BcResult {
  Matrix<F> inverse;           ///< y, the (b,c)-inverse of a
  Matrix<F> left_idempotent;   ///< p = y a
  Matrix<F> right_idempotent;  ///< q = a y
};

/// Dual (b,c)-polarity of a is carried by its (c,b)-inverse.
template <ExactField F>
struct DualBcResult {
  Matrix<F> inverse;           ///< y, the (c,b)-inverse of a
  Matrix<F> right_idempotent;  ///< r = a y
  Matrix<F> left_idempotent;   ///< s = y a
};

template <ExactField F>
struct IdempotentPair {
  Matrix<F> first;
  Matrix<F> second;
};

namespace detail {

template <ExactField F>
void require_square_family(std::initializer_list<const Matrix<F>*> ms, const char* op) {
  const Matrix<F>& head = **ms.begin();
  for (const Matrix<F>* m : ms) {
    if (!m->is_square() || m->rows() != head.rows())
      throw dimension_error(std::string(op) + ": operands must be square of one size");
    if (!(m->field() == head.field())) throw field_error(std::string(op) + ": operands live in different fields");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Verification predicates
// ---------------------------------------------------------------------------

/// The defining relations of the (b,c)-inverse.
template <ExactField F>
bool verify_bc_inverse(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& y) {
  detail::require_square_family<F>({&a, &b, &c, &y}, "verify_bc_inverse");
  return y * a * b == b && c * a * y == c && solve_right(b, y).has_value() && solve_left(c, y).has_value();
}

/// p, q are left/right (b,c)-spectral idempotents of a:
///   (1) p^2 = p in b R c a   (2) q^2 = q in a b R c
///   (3) p b = b, c q = c     (4) c a p = c a, q a b = a b
template <ExactField F>
bool verify_bc_polar(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& p,
                     const Matrix<F>& q) {
  detail::require_square_family<F>({&a, &b, &c, &p, &q}, "verify_bc_polar");
  const auto ca = c * a;
  const auto ab = a * b;
  return is_idempotent(p) && is_idempotent(q) && p * b == b && c * q == c && ca * p == ca && q * ab == ab &&
         in_set(p, b, ca) && in_set(q, ab, c);
}

/// r, s are dual right/left (b,c)-spectral idempotents of a:
///   r^2 = r in a c R b, s^2 = s in c R b a, b r = b, s c = c, r a c = a c, b a s = b a.
template <ExactField F>
bool verify_dual_bc_polar(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& r,
                          const Matrix<F>& s) {
  detail::require_square_family<F>({&a, &b, &c, &r, &s}, "verify_dual_bc_polar");
  const auto ac = a * c;
  const auto ba = b * a;
  return is_idempotent(r) && is_idempotent(s) && b * r == b && s * c == c && r * ac == ac && ba * s == ba &&
         in_set(r, ac, b) && in_set(s, c, ba);
}

/// p = p^2 in comm(d a), p d = d and 1 + d a - p invertible.
template <ExactField F>
bool verify_polar_along(const Matrix<F>& a, const Matrix<F>& d, const Matrix<F>& p) {
  detail::require_square_family<F>({&a, &d, &p}, "verify_polar_along");
  const auto da = d * a;
  return is_idempotent(p) && commutes(p, da) && p * d == d && is_invertible(identity_like(a) + da - p);
}

/// q = q^2 in comm(a d), d q = d and 1 + a d - q invertible.
template <ExactField F>
bool verify_dual_polar_along(const Matrix<F>& a, const Matrix<F>& d, const Matrix<F>& q) {
  detail::require_square_family<F>({&a, &d, &q}, "verify_dual_polar_along");
  const auto ad = a * d;
  return is_idempotent(q) && commutes(q, ad) && d * q == d && is_invertible(identity_like(a) + ad - q);
}

// ---------------------------------------------------------------------------
// (b,c)-inverse
// ---------------------------------------------------------------------------

/// b in R(cab) and c in (cab)R.
template <ExactField F>
bool bc_invertible(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "bc_invertible");
  const auto cab = c * a * b;
  return solve_left(cab, b).has_value() && solve_right(cab, c).has_value();
}

/// y = b (cab)^- c with a caller-chosen inner inverse of cab. The result does
/// not depend on the choice; this overload exists to check exactly that.
template <ExactField F>
std::optional<BcResult<F>> bc_inverse_using(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c,
                                            const Matrix<F>& cab_inner) {
  detail::require_square_family<F>({&a, &b, &c, &cab_inner}, "bc_inverse");
  const auto cab = c * a * b;
  if (!(cab * cab_inner * cab == cab)) throw precondition_error("supplied matrix is not an inner inverse of cab");
  if (!bc_invertible(a, b, c)) return std::nullopt;
  Matrix<F> y = b * cab_inner * c;
  Matrix<F> p = y * a;
  Matrix<F> q = a * y;
  detail::ensure(verify_bc_inverse(a, b, c, y), "(b,c)-inverse fails its defining relations");
  detail::ensure(verify_bc_polar(a, b, c, p, q), "(b,c)-spectral idempotents fail the polarity conditions");
  return BcResult<F>{std::move(y), std::move(p), std::move(q)};
}

template <ExactField F>
std::optional<BcResult<F>> bc_inverse(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "bc_inverse");
  return bc_inverse_using(a, b, c, inner_inverse(c * a * b));
}

/// Spectral idempotents found straight from the polarity conditions, without
/// forming any inverse. p = b X c a is pinned down by the linear equations
/// p b = b and c a p = c a (which force p^2 = p); likewise q = a b Y c by
/// c q = c and q a b = a b. Whenever these linear systems are solvable their
/// solution p (resp. q) is unique, so the canonical solution decides polarity.
template <ExactField F>
std::optional<IdempotentPair<F>> solve_bc_polar(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "solve_bc_polar");
  const std::size_t n = a.rows();
  const auto ca = c * a;
  const auto ab = a * b;
  const auto cab = ca * b;
  const std::array<LinearEquation<F>, 2> for_p{LinearEquation<F>{{{b, cab}}, b}, LinearEquation<F>{{{cab, ca}}, ca}};
  const std::array<LinearEquation<F>, 2> for_q{LinearEquation<F>{{{cab, c}}, c}, LinearEquation<F>{{{ab, cab}}, ab}};
  auto x = solve_linear_system(std::span<const LinearEquation<F>>(for_p), n, n);
  if (!x) return std::nullopt;
  auto w = solve_linear_system(std::span<const LinearEquation<F>>(for_q), n, n);
  if (!w) return std::nullopt;
  IdempotentPair<F> out{b * *x * ca, ab * *w * c};
  detail::ensure(verify_bc_polar(a, b, c, out.first, out.second), "linear-system idempotents are not spectral");
  return out;
}

/// Dual counterpart of solve_bc_polar: r = a c X b and s = c Y b a.
template <ExactField F>
std::optional<IdempotentPair<F>> solve_dual_bc_polar(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "solve_dual_bc_polar");
  const std::size_t n = a.rows();
  const auto ac = a * c;
  const auto ba = b * a;
  const auto bac = ba * c;
  const std::array<LinearEquation<F>, 2> for_r{LinearEquation<F>{{{bac, b}}, b}, LinearEquation<F>{{{ac, bac}}, ac}};
  const std::array<LinearEquation<F>, 2> for_s{LinearEquation<F>{{{c, bac}}, c}, LinearEquation<F>{{{bac, ba}}, ba}};
  auto x = solve_linear_system(std::span<const LinearEquation<F>>(for_r), n, n);
  if (!x) return std::nullopt;
  auto w = solve_linear_system(std::span<const LinearEquation<F>>(for_s), n, n);
  if (!w) return std::nullopt;
  IdempotentPair<F> out{ac * *x * b, c * *w * ba};
  detail::ensure(verify_dual_bc_polar(a, b, c, out.first, out.second), "linear-system dual idempotents are not spectral");
  return out;
}

/// Both sides of the one-sided-inverse expression for the (b,c)-inverse:
///   from_left  = (b b^- + 1 - p) b (cab)^- c
///   from_right = b (cab)^- c (c^- c + 1 - q)
/// where (b b^- + 1 - p) is a left inverse of 1 + p - b b^- and
/// (c^- c + 1 - q) a right inverse of 1 + q - c^- c.
template <ExactField F>
struct OneSidedForms {
  Matrix<F> from_left;
  Matrix<F> from_right;
  Matrix<F> left_identity_product;   ///< (b b^- + 1 - p)(1 + p - b b^-)
  Matrix<F> right_identity_product;  ///< (1 + q - c^- c)(c^- c + 1 - q)
};

template <ExactField F>
std::optional<OneSidedForms<F>> one_sided_formula_inverse(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  auto res = bc_inverse(a, b, c);
  if (!res) return std::nullopt;
  const auto one = identity_like(a);
  const auto bb = b * inner_inverse(b);
  const auto cc = inner_inverse(c) * c;
  const auto core = b * inner_inverse(c * a * b) * c;
  const auto& p = res->left_idempotent;
  const auto& q = res->right_idempotent;
  OneSidedForms<F> out{(bb + one - p) * core, core * (cc + one - q), (bb + one - p) * (one + p - bb),
                       (one + q - cc) * (cc + one - q)};
  detail::ensure(out.left_identity_product.is_identity(), "b b^- + 1 - p is not a left inverse of 1 + p - b b^-");
  detail::ensure(out.right_identity_product.is_identity(), "c^- c + 1 - q is not a right inverse of 1 + q - c^- c");
  detail::ensure(out.from_left == res->inverse && out.from_right == res->inverse,
                 "one-sided-inverse expressions disagree with the (b,c)-inverse");
  return out;
}

/// a is dually (b,c)-polar iff it is (c,b)-invertible; r = a y, s = y a with
/// y the (c,b)-inverse.
template <ExactField F>
std::optional<DualBcResult<F>> dual_bc_polar(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  auto res = bc_inverse(a, c, b);
  if (!res) return std::nullopt;
  DualBcResult<F> out{std::move(res->inverse), std::move(res->right_idempotent), std::move(res->left_idempotent)};
  detail::ensure(verify_dual_bc_polar(a, b, c, out.right_idempotent, out.left_idempotent),
                 "dual (b,c)-spectral idempotents fail their conditions");
  return out;
}

// ---------------------------------------------------------------------------
// Inverse along an element and Bott-Duffin inverses
// ---------------------------------------------------------------------------

/// The (d,d)-inverse. Also checks that p = y a makes a polar along d and that
/// q = a y makes a dually polar along d.
template <ExactField F>
std::optional<BcResult<F>> inverse_along(const Matrix<F>& a, const Matrix<F>& d) {
  auto res = bc_inverse(a, d, d);
  if (!res) return std::nullopt;
  detail::ensure(verify_polar_along(a, d, res->left_idempotent), "inverse along d: p is not polar along d");
  detail::ensure(verify_dual_polar_along(a, d, res->right_idempotent), "inverse along d: q is not dually polar along d");
  return res;
}

/// Polarity along d decided without inverting anything: p = (da) X (da) with
/// p d = d and p (da) = (da) p. When a is polar along d the solution p is
/// unique, so testing the canonical one is conclusive.
template <ExactField F>
std::optional<Matrix<F>> solve_polar_along(const Matrix<F>& a, const Matrix<F>& d) {
  detail::require_square_family<F>({&a, &d}, "solve_polar_along");
  const auto da = d * a;
  const auto da2 = da * da;
  const std::array<LinearEquation<F>, 2> eqs{
      LinearEquation<F>{{{da, da * d}}, d},
      LinearEquation<F>{{{da, da2}, {-da2, da}}, Matrix<F>::zero(a.field(), a.rows(), a.rows())}};
  auto x = solve_linear_system(std::span<const LinearEquation<F>>(eqs), a.rows(), a.rows());
  if (!x) return std::nullopt;
  Matrix<F> p = da * *x * da;
  if (!verify_polar_along(a, d, p)) return std::nullopt;
  return p;
}

/// (e,f)-inverse for idempotents e and f.
template <ExactField F>
std::optional<BcResult<F>> bott_duffin(const Matrix<F>& a, const Matrix<F>& e, const Matrix<F>& f) {
  detail::require_square_family<F>({&a, &e, &f}, "bott_duffin");
  if (!is_idempotent(e) || !is_idempotent(f)) throw precondition_error("bott_duffin: e and f must be idempotent");
  return bc_inverse(a, e, f);
}

// ---------------------------------------------------------------------------
// Closed forms under commutation hypotheses
// ---------------------------------------------------------------------------

template <ExactField F>
struct CommutingClosedForms {
  Matrix<F> bc_inverse;  ///< a^{||(b,c)}
  Matrix<F> cb_inverse;  ///< a^{||(c,b)}
  /// b a (c aba + 1 - (aba)^{c pi})^{-1} c  and  (b aca + 1 - (aca)^{b pi})^{-1} b a c
  std::array<Matrix<F>, 2> bc_shifted_forms;
  /// (c aba + 1 - (aba)^{c pi})^{-1} c a b  and  c a (b aca + 1 - (aca)^{b pi})^{-1} b
  std::array<Matrix<F>, 2> cb_shifted_forms;
  /// bac(abac)^#, ba(caba)^# c, b(acab)^# ac, (baca)^# bac
  std::array<Matrix<F>, 4> bc_group_forms;
  /// cab(acab)^#, ca(baca)^# b, c(abac)^# ab, (caba)^# cab
  std::array<Matrix<F>, 4> cb_group_forms;
};

/// For a both (b,c)- and (c,b)-invertible with aba in comm(c) and aca in
/// comm(b): evaluates the shifted-inverse and group-inverse closed forms of
/// both inverses and checks that they all agree, together with the idempotent
/// identities a^{||(b,c)} a = a a^{||(c,b)} and a a^{||(b,c)} = a^{||(c,b)} a.
/// Returns nullopt when a hypothesis fails.
template <ExactField F>
std::optional<CommutingClosedForms<F>> commuting_closed_forms(const Matrix<F>& a, const Matrix<F>& b,
                                                              const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "commuting_closed_forms");
  const auto aba = a * b * a;
  const auto aca = a * c * a;
  if (!commutes(aba, c) || !commutes(aca, b)) return std::nullopt;
  auto bc = bc_inverse(a, b, c);
  auto cb = bc_inverse(a, c, b);
  if (!bc || !cb) return std::nullopt;

  const auto one = identity_like(a);
  auto along_c = inverse_along(aba, c);
  auto along_b = inverse_along(aca, b);
  detail::ensure(along_c.has_value() && along_b.has_value(), "aba not invertible along c or aca not along b");
  auto shift_c = two_sided_inverse(c * aba + one - along_c->left_idempotent);
  auto shift_b = two_sided_inverse(b * aca + one - along_b->left_idempotent);
  detail::ensure(shift_c.has_value() && shift_b.has_value(), "shifted matrices are singular");

  const auto ab = a * b, ac = a * c, ba = b * a, ca = c * a;
  const auto abac = ab * ac, acab = ac * ab, baca = ba * ca, caba = ca * ba;
  auto g_abac = group_inverse(abac), g_acab = group_inverse(acab);
  auto g_baca = group_inverse(baca), g_caba = group_inverse(caba);
  detail::ensure(g_abac && g_acab && g_baca && g_caba, "group inverses of the cyclic products do not exist");

  CommutingClosedForms<F> out{
      bc->inverse,
      cb->inverse,
      {ba * *shift_c * c, *shift_b * ba * c},
      {*shift_c * ca * b, ca * *shift_b * b},
      {ba * c * *g_abac, ba * *g_caba * c, b * *g_acab * ac, *g_baca * ba * c},
      {ca * b * *g_acab, ca * *g_baca * b, c * *g_abac * ab, *g_caba * ca * b},
  };
  for (const auto& m : out.bc_shifted_forms) detail::ensure(m == out.bc_inverse, "shifted form of a^{||(b,c)} disagrees");
  for (const auto& m : out.cb_shifted_forms) detail::ensure(m == out.cb_inverse, "shifted form of a^{||(c,b)} disagrees");
  for (const auto& m : out.bc_group_forms) detail::ensure(m == out.bc_inverse, "group form of a^{||(b,c)} disagrees");
  for (const auto& m : out.cb_group_forms) detail::ensure(m == out.cb_inverse, "group form of a^{||(c,b)} disagrees");
  detail::ensure(bc->left_idempotent == a * cb->inverse, "left (b,c) idempotent differs from dual right idempotent");
  detail::ensure(bc->right_idempotent == cb->inverse * a, "right (b,c) idempotent differs from dual left idempotent");
  return out;
}

/// For a (b,c)-polar with a in comm(b) ∩ comm(c) and b a = c a: a^k is
/// (b^k, c^k)-polar with the same spectral idempotents, a is polar along b
/// with idempotent p, and dually polar along c with idempotent q. Returns the
/// (b^k, c^k) result, or nullopt when a hypothesis fails.
template <ExactField F>
std::optional<BcResult<F>> power_polar(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, std::size_t k) {
  detail::require_square_family<F>({&a, &b, &c}, "power_polar");
  if (k == 0) throw precondition_error("power_polar: k must be at least 1");
  if (!commutes(a, b) || !commutes(a, c) || !(b * a == c * a)) return std::nullopt;
  auto base = bc_inverse(a, b, c);
  if (!base) return std::nullopt;

  auto powered = bc_inverse(a.pow(k), b.pow(k), c.pow(k));
  detail::ensure(powered.has_value(), "a^k is not (b^k,c^k)-invertible");
  detail::ensure(powered->left_idempotent == base->left_idempotent &&
                     powered->right_idempotent == base->right_idempotent,
                 "spectral idempotents of a^k differ from those of a");

  auto along_b = inverse_along(a, b);
  detail::ensure(along_b && along_b->left_idempotent == base->left_idempotent, "a is not polar along b with a^{b pi} = p");
  auto along_c = inverse_along(a, c);
  detail::ensure(along_c && along_c->right_idempotent == base->right_idempotent,
                 "a is not dually polar along c with a_{c pi} = q");
  return powered;
}

// ---------------------------------------------------------------------------
// Perturbation and involution
// ---------------------------------------------------------------------------

/// The four equivalent conditions on d, relative to a (b,c)-polar a with
/// idempotents p, q.
struct PerturbationVerdicts {
  bool same_idempotents;    ///< d (b,c)-polar with p_d = p and q_d = q
  bool membership_block;    ///< c d p = c d, p in bRcd, p b = b; q d b = d b, q in dbRc, c q = c
  bool intersection_block;  ///< as above with p in bRcd ∩ bRca and q in abRc ∩ dbRc
  bool polar_with_anchors;  ///< d (b,c)-polar, c d p = c d and q d b = d b

  bool all_equal() const {
    return same_idempotents == membership_block && membership_block == intersection_block &&
           intersection_block == polar_with_anchors;
  }
  friend bool operator==(const PerturbationVerdicts&, const PerturbationVerdicts&) = default;
};

template <ExactField F>
PerturbationVerdicts perturbation_conditions(const Matrix<F>& a, const Matrix<F>& d, const Matrix<F>& b,
                                             const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &d, &b, &c}, "perturbation_conditions");
  auto base = bc_inverse(a, b, c);
  if (!base) throw precondition_error("perturbation_conditions: a is not (b,c)-polar");
  const auto& p = base->left_idempotent;
  const auto& q = base->right_idempotent;
  const auto cd = c * d;
  const auto db = d * b;

  const bool anchor_p = cd * p == cd;
  const bool anchor_q = q * db == db;
  const bool fixes = p * b == b && c * q == c;
  const bool in_bRcd = in_set(p, b, cd);
  const bool in_dbRc = in_set(q, db, c);

  PerturbationVerdicts v{};
  auto other = bc_inverse(d, b, c);
  v.same_idempotents = other && other->left_idempotent == p && other->right_idempotent == q;
  v.membership_block = anchor_p && in_bRcd && fixes && anchor_q && in_dbRc;
  v.intersection_block = anchor_p && in_bRcd && in_set(p, b, c * a) && fixes && anchor_q && in_set(q, a * b, c) && in_dbRc;
  v.polar_with_anchors = solve_bc_polar(d, b, c).has_value() && anchor_p && anchor_q;
  return v;
}

/// With * = transpose: a is (b,c)-polar iff a* is dually (b*,c*)-polar, and
/// then p* and q* are the dual right and left idempotents of a*.
template <ExactField F>
bool involution_duality_holds(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  detail::require_square_family<F>({&a, &b, &c}, "involution_duality_holds");
  auto direct = bc_inverse(a, b, c);
  auto dual = dual_bc_polar(a.transpose(), b.transpose(), c.transpose());
  if (direct.has_value() != dual.has_value()) return false;
  if (!direct) return true;
  return direct->inverse.transpose() == dual->inverse &&
         direct->left_idempotent.transpose() == dual->right_idempotent &&
         direct->right_idempotent.transpose() == dual->left_idempotent;
}

}  // namespace bcpolar
