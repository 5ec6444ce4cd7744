#pragma once

// Seeded property runner. Every property is a predicate on a randomly drawn
// (or exhaustively enumerated) instance (a, b, c[, d]); the runner counts
// passes and failures per property and keeps the first counterexample.
//
// Randomness: each trial owns a std::mt19937_64 (the standard fully specifies
// its output sequence) seeded with
//     splitmix64(splitmix64(splitmix64(seed) ^ fnv1a(property id)) ^ trial).
// Bounded integers are drawn by rejection (Rng::below), never with the
// implementation-defined std::uniform_int_distribution, so a report depends
// only on (seed, field, max_dim, trials) and not on the standard library.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "bcpolar/bc.hpp"
#include "bcpolar/classic.hpp"
#include "bcpolar/io.hpp"
#include "bcpolar/subspace.hpp"

namespace bcpolar::suite {

inline constexpr std::size_t rejection_cap = 10'000;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

constexpr std::uint64_t trial_seed(std::uint64_t seed, std::string_view stream, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a(stream)) ^ trial);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

enum class Family { uniform, rank_deficient, commuting_polynomial, polynomial_pair, perturbation, worked_examples };

inline constexpr std::array<Family, 6> all_families{Family::uniform,         Family::rank_deficient,
                                                    Family::commuting_polynomial, Family::polynomial_pair,
                                                    Family::perturbation,    Family::worked_examples};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::uniform: return "uniform";
    case Family::rank_deficient: return "rank-deficient";
    case Family::commuting_polynomial: return "commuting-polynomial";
    case Family::polynomial_pair: return "polynomial-pair";
    case Family::perturbation: return "perturbation";
    case Family::worked_examples: return "worked-examples";
  }
  return "?";
}

inline Family family_from_name(std::string_view name) {
  for (Family f : all_families)
    if (family_name(f) == name) return f;
  throw precondition_error("unknown instance family '" + std::string(name) + "'");
}

template <ExactField F>
struct Instance {
  Matrix<F> a;
  Matrix<F> b;
  Matrix<F> c;
  std::optional<Matrix<F>> d;

  json to_json() const {
    json j{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}, {"c", matrix_to_json(c)}};
    if (d) j["d"] = matrix_to_json(*d);
    return j;
  }
};

/// Small integers over Q (entries in [-3, 3]); uniform residues over F_p.
template <ExactField F>
typename F::value_type random_scalar(const F& field, Rng& rng) {
  if constexpr (F::characteristic_zero) {
    return field.from_integer(static_cast<std::int64_t>(rng.below(7)) - 3);
  } else {
    return field.from_integer(static_cast<std::int64_t>(rng.below(field.modulus())));
  }
}

template <ExactField F>
Matrix<F> random_matrix(const F& field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(field, rng);
  return m;
}

template <ExactField F>
Matrix<F> random_invertible(const F& field, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = random_matrix(field, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

/// S T S^{-1} with T upper triangular and at least one zero on its diagonal,
/// so rank < n while nilpotent and invertible parts both occur.
template <ExactField F>
Matrix<F> random_singular(const F& field, std::size_t n, Rng& rng) {
  Matrix<F> t(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) t(i, j) = random_scalar(field, rng);
  const std::size_t z = rng.below(n);
  t(z, z) = field.zero();
  const auto s = random_invertible(field, n, rng);
  return s * t * *two_sided_inverse(s);
}

/// Product of random n x r and r x n factors: rank at most r.
template <ExactField F>
Matrix<F> random_of_rank_at_most(const F& field, std::size_t n, std::size_t r, Rng& rng) {
  return random_matrix(field, n, r, rng) * random_matrix(field, r, n, rng);
}

template <ExactField F>
Matrix<F> polynomial_in(const Matrix<F>& a, const std::vector<typename F::value_type>& coeffs) {
  Matrix<F> out = Matrix<F>::zero(a.field(), a.rows(), a.cols());
  Matrix<F> power = identity_like(a);
  for (const auto& k : coeffs) {
    out = out + power.scale(k);
    power = power * a;
  }
  return out;
}

template <ExactField F>
std::vector<typename F::value_type> random_coefficients(const F& field, std::size_t degree, Rng& rng) {
  std::vector<typename F::value_type> out;
  for (std::size_t i = 0; i <= degree; ++i) out.push_back(random_scalar(field, rng));
  return out;
}

/// a^e f(a) with e in [0, n] and deg f <= 2.
template <ExactField F>
Matrix<F> random_polynomial_in(const Matrix<F>& a, Rng& rng) {
  const auto e = rng.below(a.rows() + 1);
  return a.pow(e) * polynomial_in(a, random_coefficients(a.field(), 2, rng));
}

/// Monic minimal polynomial of a, lowest degree coefficient first.
template <ExactField F>
std::vector<typename F::value_type> minimal_polynomial(const Matrix<F>& a) {
  const F& field = a.field();
  const std::size_t n = a.rows();
  Matrix<F> powers(field, n * n, 0);
  Matrix<F> power = identity_like(a);
  for (std::size_t k = 0;; ++k) {
    const auto v = vec(power);
    if (auto x = solve_right(powers, v)) {
      std::vector<typename F::value_type> coeffs;
      for (std::size_t i = 0; i < k; ++i) coeffs.push_back(-(*x)(i, 0));
      coeffs.push_back(field.one());
      return coeffs;
    }
    powers = hconcat(powers, v);
    power = power * a;
  }
}

template <ExactField F>
Instance<F> worked_example(const F& field, int which) {
  using M = Matrix<F>;
  if (which == 0)
    return {M::from_rows(field, {{0, 0}, {1, 0}}), M::from_rows(field, {{1, -1}, {0, 0}}),
            M::from_rows(field, {{0, 1}, {0, 1}}), std::nullopt};
  return {M::from_rows(field, {{1, 0}, {0, 0}}), M::from_rows(field, {{0, 0}, {1, 0}}),
          M::from_rows(field, {{0, 1}, {0, 0}}), std::nullopt};
}

/// Draws one instance of size n from `family`.
///   uniform               independent uniform a, b, c, d
///   rank-deficient        singular a; b and c of a common rank bound r in [0, n]
///   commuting-polynomial  singular a, b = a^e f(a), c = b + h(a) g(a) with
///                         h(a) a = 0, so a b = b a and b a = c a
///   polynomial-pair       b = a^e f(a), c = a^e' g(a) drawn independently
///   perturbation          (a, b, c) as above, d = a + (1-q) W (1-p) (keeps the
///                         spectral idempotents), a + rank-one, or uniform
///   worked-examples        one of two fixed 2x2 triples (n ignored)
template <ExactField F>
Instance<F> generate_instance(const F& field, Family family, std::size_t n, Rng& rng) {
  if (n == 0) throw precondition_error("generate_instance: n must be positive");
  switch (family) {
    case Family::uniform:
      return {random_matrix(field, n, n, rng), random_matrix(field, n, n, rng), random_matrix(field, n, n, rng),
              random_matrix(field, n, n, rng)};
    case Family::rank_deficient: {
      auto a = random_singular(field, n, rng);
      const auto r = rng.below(n + 1);
      auto b = random_of_rank_at_most(field, n, r, rng);
      auto c = random_of_rank_at_most(field, n, r, rng);
      return {std::move(a), std::move(b), std::move(c), random_matrix(field, n, n, rng)};
    }
    case Family::commuting_polynomial: {
      auto a = random_singular(field, n, rng);
      auto b = random_polynomial_in(a, rng);
      auto m = minimal_polynomial(a);
      detail::ensure(m.front().is_zero(), "singular matrix has nonzero minimal polynomial constant term");
      m.erase(m.begin());  // h(x) = m(x) / x
      auto c = b + polynomial_in(a, m) * polynomial_in(a, random_coefficients(field, 1, rng));
      return {std::move(a), std::move(b), std::move(c), std::nullopt};
    }
    case Family::polynomial_pair: {
      auto a = rng.coin() ? random_singular(field, n, rng) : random_matrix(field, n, n, rng);
      auto b = random_polynomial_in(a, rng);
      auto c = random_polynomial_in(a, rng);
      return {std::move(a), std::move(b), std::move(c), std::nullopt};
    }
    case Family::perturbation: {
      auto inst = generate_instance(field, rng.coin() ? Family::rank_deficient : Family::uniform, n, rng);
      const auto mode = rng.below(3);
      auto base = bc_inverse(inst.a, inst.b, inst.c);
      if (base && mode == 0) {
        const auto one = identity_like(inst.a);
        inst.d = inst.a + (one - base->right_idempotent) * random_matrix(field, n, n, rng) *
                              (one - base->left_idempotent);
      } else if (mode == 1) {
        inst.d = inst.a + random_matrix(field, n, 1, rng) * random_matrix(field, 1, n, rng);
      } else {
        inst.d = random_matrix(field, n, n, rng);
      }
      return inst;
    }
    case Family::worked_examples:
      return worked_example(field, static_cast<int>(rng.below(2)));
  }
  throw precondition_error("unknown instance family");
}

/// All q^(n*n) matrices over F_q when that count is at most `limit`.
template <ExactField F>
std::optional<std::vector<Matrix<F>>> small_matrix_space(const F& field, std::size_t n, std::size_t limit) {
  if constexpr (F::characteristic_zero) {
    return std::nullopt;
  } else {
    const std::uint64_t q = field.modulus();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
      count *= q;
      if (count > limit) return std::nullopt;
    }
    std::vector<Matrix<F>> out;
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
      Matrix<F> m(field, n, n);
      std::uint64_t rest = code;
      for (std::size_t k = 0; k < n * n; ++k, rest /= q)
        m(k / n, k % n) = field.from_integer(static_cast<std::int64_t>(rest % q));
      out.push_back(std::move(m));
    }
    return out;
  }
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

/// nullopt means the instance passed; otherwise a description of the failure.
using Verdict = std::optional<std::string>;

template <ExactField F>
struct Property {
  std::string id;
  std::string description;
  /// Matrices the property reads, in the order a, b, c, d. Exhaustive mode
  /// enumerates exactly these; the rest are filled in (c = b, d = a).
  std::size_t arity;
  std::function<Family(std::uint64_t trial)> family;
  std::function<bool(const Instance<F>&)> hypotheses;  // empty: every instance qualifies
  std::function<Verdict(const Instance<F>&, Rng&)> check;
};

namespace detail {

inline Verdict fail_unless(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

inline std::function<Family(std::uint64_t)> alternate(Family even, Family odd) {
  return [even, odd](std::uint64_t t) { return t % 2 == 0 ? even : odd; };
}

template <ExactField F>
bool left_side_ok(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& p) {
  const auto ca = c * a;
  return is_idempotent(p) && p * b == b && ca * p == ca && in_set(p, b, ca);
}

template <ExactField F>
bool right_side_ok(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& q) {
  const auto ab = a * b;
  return is_idempotent(q) && c * q == c && q * ab == ab && in_set(q, ab, c);
}

/// An inner inverse of m different from the canonical one in general:
/// G + U - G m U m G for the canonical G and random U.
template <ExactField F>
Matrix<F> perturbed_inner_inverse(const Matrix<F>& m, Rng& rng) {
  const auto g = inner_inverse(m);
  const auto u = random_matrix(m.field(), m.cols(), m.rows(), rng);
  return g + u - g * m * u * m * g;
}

}  // namespace detail

template <ExactField F>
Verdict check_polar_iff_invertible(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto inverse = bc_inverse(a, b, c);
  const auto polar = solve_bc_polar(a, b, c);
  if (inverse.has_value() != polar.has_value())
    return std::string("invertible=") + (inverse ? "true" : "false") + " but polar=" + (polar ? "true" : "false");
  if (inverse) {
    if (!(polar->first == inverse->left_idempotent && polar->second == inverse->right_idempotent))
      return "idempotents from the polarity equations differ from y a, a y";
    if (!one_sided_formula_inverse(a, b, c)) return "one-sided-inverse expressions unavailable";
  }
  // Over tiny fields, search every candidate idempotent directly.
  if (auto space = small_matrix_space(a.field(), a.rows(), 256)) {
    std::size_t ps = 0, qs = 0;
    for (const auto& m : *space) {
      if (detail::left_side_ok(a, b, c, m)) {
        ++ps;
        if (inverse && !(m == inverse->left_idempotent)) return "brute force found a second left idempotent";
      }
      if (detail::right_side_ok(a, b, c, m)) {
        ++qs;
        if (inverse && !(m == inverse->right_idempotent)) return "brute force found a second right idempotent";
      }
    }
    if ((ps > 0 && qs > 0) != inverse.has_value()) return "brute-force polarity disagrees with invertibility";
  }
  return std::nullopt;
}

template <ExactField F>
Verdict check_inner_inverse_independence(const Instance<F>& in, Rng& rng) {
  const auto& [a, b, c, d] = in;
  const auto cab = c * a * b;
  const auto canonical = bc_inverse(a, b, c);
  if (!canonical) return "instance is not invertible";
  const std::array<Matrix<F>, 2> alternatives{detail::perturbed_inner_inverse(cab, rng),
                                              inner_inverse(cab.transpose()).transpose()};
  for (const auto& g : alternatives) {
    auto other = bc_inverse_using(a, b, c, g);
    if (!other) return "alternative inner inverse lost invertibility";
    if (!(other->inverse == canonical->inverse && other->left_idempotent == canonical->left_idempotent &&
          other->right_idempotent == canonical->right_idempotent))
      return "result depends on the choice of inner inverse of cab";
  }
  return std::nullopt;
}

template <ExactField F>
Verdict check_regularity(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto cab = c * a * b;
  const auto g = inner_inverse(cab);
  if (!(cab * g * cab == cab)) return "cab is not regular";
  if (!(b * (g * c * a) * b == b)) return "(cab)^- c a is not an inner inverse of b";
  if (!(c * (a * b * g) * c == c)) return "a b (cab)^- is not an inner inverse of c";
  return std::nullopt;
}

template <ExactField F>
Verdict check_bb_polar_is_polar_along(const Instance<F>& in, Rng&) {
  const auto& a = in.a;
  const auto& b = in.b;
  const auto bb = solve_bc_polar(a, b, b);
  const auto along = solve_polar_along(a, b);
  if (bb.has_value() != along.has_value()) return "(b,b)-polarity and polarity along b disagree";
  if (bb && !(bb->first == *along)) return "left (b,b) idempotent differs from the idempotent along b";
  if (inverse_along(a, b).has_value() != along.has_value()) return "invertibility along b disagrees with polarity";
  return std::nullopt;
}

template <ExactField F>
Verdict check_polar_iff_dual_swapped(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto polar = solve_bc_polar(a, b, c);
  const auto dual = solve_dual_bc_polar(a, c, b);
  if (polar.has_value() != dual.has_value()) return "(b,c)-polarity and dual (c,b)-polarity disagree";
  if (polar) {
    const auto y = bc_inverse(a, b, c);
    if (!y) return "polar but bc_inverse failed";
    if (!(dual->first == a * y->inverse && dual->second == y->inverse * a))
      return "dual idempotents are not a y and y a";
    if (!(dual->first == polar->second && dual->second == polar->first)) return "dual idempotents differ from q, p";
  }
  return std::nullopt;
}

template <ExactField F>
Verdict check_dual_polar_iff_cb_invertible(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto dual = solve_dual_bc_polar(a, b, c);
  const auto cb = bc_inverse(a, c, b);
  if (dual.has_value() != cb.has_value()) return "dual (b,c)-polarity and (c,b)-invertibility disagree";
  if (dual && !(dual->first == a * cb->inverse && dual->second == cb->inverse * a))
    return "dual idempotents are not a y_cb and y_cb a";
  return std::nullopt;
}

template <ExactField F>
bool closed_form_hypotheses(const Instance<F>& in) {
  const auto& [a, b, c, d] = in;
  return commutes(a * b * a, c) && commutes(a * c * a, b) && bc_invertible(a, b, c) && bc_invertible(a, c, b);
}

template <ExactField F>
Verdict check_commuting_closed_forms(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto forms = commuting_closed_forms(a, b, c);
  if (!forms) return "closed forms unavailable although hypotheses hold";
  for (const auto& m : forms->bc_shifted_forms)
    if (!(m == forms->bc_inverse)) return "shifted form of the (b,c)-inverse disagrees";
  for (const auto& m : forms->cb_shifted_forms)
    if (!(m == forms->cb_inverse)) return "shifted form of the (c,b)-inverse disagrees";
  const auto bc = bc_inverse(a, b, c);
  if (!(bc->left_idempotent == a * forms->cb_inverse && bc->right_idempotent == forms->cb_inverse * a))
    return "(b,c) idempotents do not match the (c,b) dual idempotents";
  return std::nullopt;
}

template <ExactField F>
Verdict check_group_inverse_forms(const Instance<F>& in, Rng&) {
  const auto forms = commuting_closed_forms(in.a, in.b, in.c);
  if (!forms) return "closed forms unavailable although hypotheses hold";
  for (const auto& m : forms->bc_group_forms)
    if (!(m == forms->bc_inverse)) return "group-inverse form of the (b,c)-inverse disagrees";
  for (const auto& m : forms->cb_group_forms)
    if (!(m == forms->cb_inverse)) return "group-inverse form of the (c,b)-inverse disagrees";
  return std::nullopt;
}

template <ExactField F>
Verdict check_involution_duality(const Instance<F>& in, Rng&) {
  return detail::fail_unless(involution_duality_holds(in.a, in.b, in.c), "transpose duality fails");
}

template <ExactField F>
bool power_hypotheses(const Instance<F>& in) {
  const auto& [a, b, c, d] = in;
  return commutes(a, b) && commutes(a, c) && b * a == c * a && bc_invertible(a, b, c);
}

template <ExactField F>
Verdict check_power_polarity(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto base = bc_inverse(a, b, c);
  for (std::size_t k : {2u, 3u}) {
    const auto powered = power_polar(a, b, c, k);
    if (!powered) return "a^" + std::to_string(k) + " is not (b^k,c^k)-polar";
    if (!(powered->left_idempotent == base->left_idempotent && powered->right_idempotent == base->right_idempotent))
      return "idempotents of a^" + std::to_string(k) + " differ";
  }
  return std::nullopt;
}

template <ExactField F>
Verdict check_perturbation(const Instance<F>& in, Rng&) {
  const auto v = perturbation_conditions(in.a, *in.d, in.b, in.c);
  if (v.all_equal()) return std::nullopt;
  return "condition blocks disagree: " + std::to_string(v.same_idempotents) + std::to_string(v.membership_block) +
         std::to_string(v.intersection_block) + std::to_string(v.polar_with_anchors);
}

template <ExactField F>
Verdict check_operator_projections(const Instance<F>& in, Rng&) {
  const auto& [a, b, c, d] = in;
  const auto v = operator_characterization(a, b, c);
  if (!v.agree()) return "range/nullspace, polarity and projector verdicts disagree";
  if (v.invertible) {
    const auto y = bc_inverse(a, b, c);
    if (!(v.p->matrix == y->left_idempotent && v.q->matrix == y->right_idempotent))
      return "projectors differ from the spectral idempotents";
  }
  return std::nullopt;
}

template <ExactField F>
Verdict check_along_operator(const Instance<F>& in, Rng&) {
  return detail::fail_unless(along_operator_characterization(in.a, in.b).agree(),
                             "the four verdicts on invertibility along b disagree");
}

template <ExactField F>
Verdict check_classic_consistency(const Instance<F>& in, Rng&) {
  const auto& a = in.a;
  const auto dz = drazin(a);
  const auto along = inverse_along(a, a.pow(dz.index));
  if (!along || !(along->inverse == dz.d_inverse)) return "inverse along a^k is not the Drazin inverse";
  if (!verify_polar(a, dz.spectral_idempotent)) return "spectral idempotent fails the polarity conditions";
  const auto group = group_inverse(a);
  if (group.has_value() != (dz.index <= 1)) return "group inverse existence disagrees with the Drazin index";
  if (group) {
    const auto by_a = inverse_along(a, a);
    if (!(*group == dz.d_inverse) || !by_a || !(by_a->inverse == *group)) return "group inverse mismatch";
  }
  const auto star = inverse_along(a, a.transpose());
  if constexpr (F::characteristic_zero) {
    if (!star || !(star->inverse == moore_penrose(a))) return "inverse along a^T is not the Moore-Penrose inverse";
  } else {
    if (star && !satisfies_penrose(a, star->inverse)) return "inverse along a^T fails the Penrose identities";
  }
  return std::nullopt;
}

template <ExactField F>
std::vector<Property<F>> standard_properties() {
  using detail::alternate;
  const auto mixed = alternate(Family::rank_deficient, Family::uniform);
  const auto commuting = alternate(Family::commuting_polynomial, Family::polynomial_pair);
  const auto invertible = [](const Instance<F>& in) { return bc_invertible(in.a, in.b, in.c); };
  return {
      {"polar-iff-invertible", "(b,c)-invertible iff (b,c)-polar, with p = ya and q = ay", 3, mixed, {},
       check_polar_iff_invertible<F>},
      {"inner-inverse-independence", "y, p, q do not depend on the inner inverse of cab", 3, mixed, invertible,
       check_inner_inverse_independence<F>},
      {"regularity", "b, c and cab are regular when a is (b,c)-invertible", 3, mixed, invertible,
       check_regularity<F>},
      {"bb-polar-is-polar-along", "(b,b)-polar iff polar along b, same idempotent", 2, mixed, {},
       check_bb_polar_is_polar_along<F>},
      {"polar-iff-dual-swapped", "(b,c)-polar iff dually (c,b)-polar, r = ay, s = ya", 3, mixed, {},
       check_polar_iff_dual_swapped<F>},
      {"dual-polar-iff-cb-invertible", "dually (b,c)-polar iff (c,b)-invertible", 3, mixed, {},
       check_dual_polar_iff_cb_invertible<F>},
      {"commuting-closed-forms", "shifted-inverse closed forms under commutation", 3, commuting,
       closed_form_hypotheses<F>, check_commuting_closed_forms<F>},
      {"group-inverse-forms", "group-inverse expressions under commutation", 3, commuting, closed_form_hypotheses<F>,
       check_group_inverse_forms<F>},
      {"involution-duality", "a (b,c)-polar iff a^T dually (b^T,c^T)-polar", 3, mixed, {},
       check_involution_duality<F>},
      {"power-polarity", "a^k is (b^k,c^k)-polar with unchanged idempotents", 3,
       [](std::uint64_t) { return Family::commuting_polynomial; }, power_hypotheses<F>, check_power_polarity<F>},
      {"perturbation-equivalence", "four conditions on a perturbation d agree", 4,
       [](std::uint64_t) { return Family::perturbation; }, invertible, check_perturbation<F>},
      {"operator-projections", "range/nullspace, polarity and projector criteria agree", 3, mixed, {},
       check_operator_projections<F>},
      {"along-operator", "four criteria for invertibility along b agree", 2, mixed, {}, check_along_operator<F>},
      {"classic-consistency", "group, Drazin and Moore-Penrose inverses as inverses along", 1, mixed, {},
       check_classic_consistency<F>},
  };
}

// ---------------------------------------------------------------------------
// Runner and report
// ---------------------------------------------------------------------------

struct Counterexample {
  std::uint64_t trial;
  json instance;
  std::string detail;
};

struct PropertyRecord {
  std::string id;
  std::string description;
  std::size_t executed = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t filtered = 0;  ///< exhaustive mode: instances outside the hypotheses
  std::size_t starved = 0;   ///< random mode: trials with no qualifying draw within the cap
  std::optional<Counterexample> counterexample;

  std::string status() const { return failed > 0 ? "fail" : starved > 0 ? "starved" : "pass"; }
};

struct Report {
  std::uint64_t seed = 0;
  std::string field;
  std::string mode;  ///< "random" or "exhaustive-f2"
  std::size_t min_dim = 1;
  std::size_t max_dim = 1;
  std::optional<std::size_t> trials;
  std::vector<PropertyRecord> properties;
  double wall_seconds = 0;  ///< not part of to_json()

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& p : properties) n += p.failed;
    return n;
  }
  std::size_t starved_properties() const {
    return static_cast<std::size_t>(
        std::count_if(properties.begin(), properties.end(), [](const auto& p) { return p.starved > 0; }));
  }
  bool ok() const { return failures() == 0 && starved_properties() == 0; }
  const PropertyRecord& record(std::string_view id) const {
    for (const auto& p : properties)
      if (p.id == id) return p;
    throw precondition_error("no property '" + std::string(id) + "' in report");
  }

  /// Deterministic body: identical inputs give byte-identical dumps.
  json to_json() const {
    json props = json::array();
    std::size_t executed = 0;
    for (const auto& p : properties) {
      executed += p.executed;
      json rec{{"id", p.id},           {"description", p.description}, {"status", p.status()},
               {"executed", p.executed}, {"passed", p.passed},         {"failed", p.failed},
               {"filtered", p.filtered}, {"starved", p.starved},       {"counterexample", nullptr}};
      if (p.counterexample)
        rec["counterexample"] = {
            {"trial", p.counterexample->trial}, {"instance", p.counterexample->instance}, {"detail", p.counterexample->detail}};
      props.push_back(std::move(rec));
    }
    return json{{"seed", seed},
                {"field", field},
                {"mode", mode},
                {"size_range", {{"min", min_dim}, {"max", max_dim}}},
                {"trials", trials ? json(*trials) : json(nullptr)},
                {"properties", std::move(props)},
                {"totals", {{"executed", executed}, {"failures", failures()}, {"starved_properties", starved_properties()}}}};
  }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t max_dim = 4;
  std::size_t trials = 200;
  /// Restrict to these property ids (empty: all).
  std::vector<std::string> only;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

namespace detail {

template <ExactField F>
PropertyRecord empty_record(const Property<F>& p) {
  PropertyRecord rec;
  rec.id = p.id;
  rec.description = p.description;
  return rec;
}

inline void merge(PropertyRecord& into, const PropertyRecord& part) {
  into.executed += part.executed;
  into.passed += part.passed;
  into.failed += part.failed;
  into.filtered += part.filtered;
  into.starved += part.starved;
  if (!into.counterexample && part.counterexample) into.counterexample = part.counterexample;
}

template <ExactField F>
void record_outcome(PropertyRecord& rec, const Property<F>& prop, const Instance<F>& inst, Rng& rng,
                    std::uint64_t trial) {
  Verdict v;
  try {
    v = prop.check(inst, rng);
  } catch (const std::exception& e) {
    v = std::string("exception: ") + e.what();
  }
  ++rec.executed;
  if (!v) {
    ++rec.passed;
    return;
  }
  ++rec.failed;
  if (!rec.counterexample) rec.counterexample = Counterexample{trial, inst.to_json(), *v};
}

struct Task {
  std::size_t property;
  std::uint64_t begin;
  std::uint64_t end;
};

/// Runs tasks on a small pool and merges results per property in task order,
/// so the outcome does not depend on scheduling.
inline void run_tasks(const std::vector<Task>& tasks, std::vector<PropertyRecord>& records, std::size_t threads,
                      const std::function<PropertyRecord(const Task&)>& work) {
  std::vector<PropertyRecord> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = work(tasks[i]);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < tasks.size(); ++i) merge(records[tasks[i].property], results[i]);
}

template <ExactField F>
std::vector<Property<F>> select(std::vector<Property<F>> all, const std::vector<std::string>& only) {
  if (only.empty()) return all;
  std::vector<Property<F>> out;
  for (const auto& id : only) {
    auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.id == id; });
    if (it == all.end()) throw precondition_error("unknown property id '" + id + "'");
    out.push_back(*it);
  }
  return out;
}

inline std::vector<Task> chunk(std::size_t properties, std::uint64_t count, std::uint64_t size) {
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < properties; ++p)
    for (std::uint64_t b = 0; b < count; b += size) tasks.push_back({p, b, std::min(count, b + size)});
  return tasks;
}

}  // namespace detail

/// Random mode over an explicit property list (opts.only is ignored).
template <ExactField F>
Report run_properties(const F& field, const std::vector<Property<F>>& props, const SuiteOptions& opts) {
  if (opts.max_dim < 1) throw precondition_error("run_suite: max_dim must be at least 1");
  if (opts.trials < 1) throw precondition_error("run_suite: trials must be at least 1");
  const auto started = std::chrono::steady_clock::now();

  Report report;
  report.seed = opts.seed;
  report.field = field.descriptor();
  report.mode = "random";
  report.max_dim = opts.max_dim;
  report.trials = opts.trials;
  for (const auto& p : props) report.properties.push_back(detail::empty_record(p));

  const auto tasks = detail::chunk(props.size(), opts.trials, 25);
  detail::run_tasks(tasks, report.properties, opts.threads, [&](const detail::Task& task) {
    const auto& prop = props[task.property];
    PropertyRecord rec;
    for (std::uint64_t t = task.begin; t < task.end; ++t) {
      Rng rng(trial_seed(opts.seed, prop.id, t));
      std::optional<Instance<F>> chosen;
      try {
        for (std::size_t draw = 0; draw < rejection_cap && !chosen; ++draw) {
          const std::size_t n = 1 + rng.below(opts.max_dim);
          auto inst = generate_instance(field, prop.family(t), n, rng);
          if (!prop.hypotheses || prop.hypotheses(inst)) chosen = std::move(inst);
        }
      } catch (const std::exception& e) {
        ++rec.executed;
        ++rec.failed;
        if (!rec.counterexample) rec.counterexample = Counterexample{t, nullptr, std::string("generator: ") + e.what()};
        continue;
      }
      if (!chosen) {
        ++rec.starved;
        continue;
      }
      detail::record_outcome(rec, prop, *chosen, rng, t);
    }
    return rec;
  });
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

/// Random mode: for every standard property (or those in opts.only),
/// `trials` instances of size 1..max_dim satisfying its hypotheses.
template <ExactField F>
Report run_suite(const F& field, const SuiteOptions& opts) {
  return run_properties(field, detail::select(standard_properties<F>(), opts.only), opts);
}

/// Exhaustive mode over 2x2 matrices on F_2: every property sees every tuple
/// of its arity (16^arity instances); `seed` only drives the random inner
/// inverses some checks use.
inline Report run_exhaustive_f2(std::uint64_t seed, const std::vector<std::string>& only = {},
                                std::size_t threads = 0) {
  const auto started = std::chrono::steady_clock::now();
  const PrimeField f2(2);
  const auto props = detail::select(standard_properties<PrimeField>(), only);
  const auto space = *small_matrix_space(f2, 2, 16);

  Report report;
  report.seed = seed;
  report.field = f2.descriptor();
  report.mode = "exhaustive-f2";
  report.min_dim = report.max_dim = 2;
  for (const auto& p : props) report.properties.push_back(detail::empty_record(p));

  std::vector<detail::Task> tasks;
  for (std::size_t i = 0; i < props.size(); ++i) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < props[i].arity; ++k) count *= space.size();
    for (std::uint64_t b = 0; b < count; b += 256) tasks.push_back({i, b, std::min(count, b + 256)});
  }
  detail::run_tasks(tasks, report.properties, threads, [&](const detail::Task& task) {
    const auto& prop = props[task.property];
    PropertyRecord rec;
    for (std::uint64_t index = task.begin; index < task.end; ++index) {
      std::array<const Matrix<PrimeField>*, 4> pick{};
      std::uint64_t rest = index;
      for (std::size_t k = 0; k < prop.arity; ++k, rest /= space.size()) pick[k] = &space[rest % space.size()];
      if (prop.arity < 2) pick[1] = pick[0];
      if (prop.arity < 3) pick[2] = pick[1];
      Instance<PrimeField> inst{*pick[0], *pick[1], *pick[2], std::nullopt};
      if (prop.arity >= 4) inst.d = *pick[3];
      if (prop.hypotheses && !prop.hypotheses(inst)) {
        ++rec.filtered;
        continue;
      }
      Rng rng(trial_seed(seed, prop.id, index));
      detail::record_outcome(rec, prop, inst, rng, index);
    }
    return rec;
  });
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace bcpolar::suite
