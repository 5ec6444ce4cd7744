#pragma once

// Exact scalar arithmetic for the two supported coefficient fields:
// arbitrary-precision rationals (backed by GMP) and prime fields F_p with
// p < 2^32. There is no floating point anywhere in the library.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "bcpolar/errors.hpp"

namespace bcpolar {

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw division_by_zero("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Accepts "n" or "n/d" with an optional leading '-'.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char ch : s)
        if (ch < '0' || ch > '9') return false;
      return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
      negative = true;
      body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw parse_error("malformed rational: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw division_by_zero("malformed rational (zero denominator): '" + std::string(text) + "'");
    if (negative) n = -n;
    return Rational(n, d);
  }

  std::string to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  bool is_zero() const { return sgn(value_) == 0; }

  Rational inverse() const {
    if (is_zero()) throw division_by_zero("inverse of zero");
    return Rational(mpq_class(1) / value_);
  }

  friend Rational operator+(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ + y.value_)); }
  friend Rational operator-(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ - y.value_)); }
  friend Rational operator*(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ * y.value_)); }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.is_zero()) throw division_by_zero("rational division by zero");
    return Rational(mpq_class(x.value_ / y.value_));
  }
  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& y) { value_ += y.value_; return *this; }
  Rational& operator-=(const Rational& y) { value_ -= y.value_; return *this; }
  Rational& operator*=(const Rational& y) { value_ *= y.value_; return *this; }

  friend bool operator==(const Rational& x, const Rational& y) { return x.value_ == y.value_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

 private:
  mpq_class value_;
};

// ---------------------------------------------------------------------------
// ModP
// ---------------------------------------------------------------------------

namespace detail {

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Residue class modulo a prime. The modulus travels with the value so mixing
/// fields is caught at the operation that does it.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t value, std::uint64_t modulus) : modulus_(modulus) {
    const auto m = static_cast<std::int64_t>(modulus);
    std::int64_t r = value % m;
    if (r < 0) r += m;
    residue_ = static_cast<std::uint64_t>(r);
  }

  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return residue_ == 0; }
  std::string to_string() const { return std::to_string(residue_); }

  ModP inverse() const {
    if (is_zero()) throw division_by_zero("inverse of zero mod " + std::to_string(modulus_));
    // Extended Euclid on (residue, modulus).
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(modulus_), new_r = static_cast<std::int64_t>(residue_);
    while (new_r != 0) {
      const std::int64_t quotient = r / new_r;
      t = std::exchange(new_t, t - quotient * new_t);
      r = std::exchange(new_r, r - quotient * new_r);
    }
    return ModP(t, modulus_);
  }

  friend ModP operator+(const ModP& x, const ModP& y) {
    check(x, y);
    std::uint64_t s = x.residue_ + y.residue_;
    if (s >= x.modulus_) s -= x.modulus_;
    return raw(s, x.modulus_);
  }
  friend ModP operator-(const ModP& x, const ModP& y) {
    check(x, y);
    return raw(x.residue_ >= y.residue_ ? x.residue_ - y.residue_ : x.residue_ + x.modulus_ - y.residue_, x.modulus_);
  }
  friend ModP operator*(const ModP& x, const ModP& y) {
    check(x, y);
    return raw(x.residue_ * y.residue_ % x.modulus_, x.modulus_);
  }
  friend ModP operator/(const ModP& x, const ModP& y) {
    check(x, y);
    if (y.is_zero()) throw division_by_zero("division by zero mod " + std::to_string(x.modulus_));
    return x * y.inverse();
  }
  ModP operator-() const { return raw(residue_ == 0 ? 0 : modulus_ - residue_, modulus_); }
  ModP& operator+=(const ModP& y) { return *this = *this + y; }
  ModP& operator-=(const ModP& y) { return *this = *this - y; }
  ModP& operator*=(const ModP& y) { return *this = *this * y; }

  friend bool operator==(const ModP& x, const ModP& y) {
    check(x, y);
    return x.residue_ == y.residue_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.residue_; }

 private:
  static ModP raw(std::uint64_t residue, std::uint64_t modulus) {
    ModP out;
    out.residue_ = residue;
    out.modulus_ = modulus;
    return out;
  }
  static void check(const ModP& x, const ModP& y) {
    if (x.modulus_ != y.modulus_)
      throw field_error("mixed moduli: " + std::to_string(x.modulus_) + " vs " + std::to_string(y.modulus_));
  }

  std::uint64_t residue_ = 0;
  std::uint64_t modulus_ = 2;
};

// ---------------------------------------------------------------------------
// Field descriptors
// ---------------------------------------------------------------------------

/// A field descriptor knows how to make constants, parse and print elements.
/// Matrices carry one so that empty and zero matrices still know their field.
template <class F>
concept ExactField = std::regular<F> && requires(const F& f, const typename F::value_type& x, std::string_view s) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_integer(std::int64_t{}) } -> std::same_as<typename F::value_type>;
  { f.parse(s) } -> std::same_as<typename F::value_type>;
  { f.format(x) } -> std::same_as<std::string>;
  { f.descriptor() } -> std::same_as<std::string>;
  { f.contains(x) } -> std::same_as<bool>;
  { F::characteristic_zero } -> std::convertible_to<bool>;
};

struct RationalField {
  using value_type = Rational;
  static constexpr bool characteristic_zero = true;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_integer(std::int64_t v) const { return Rational(static_cast<long>(v)); }
  Rational parse(std::string_view text) const { return Rational::parse(text); }
  std::string format(const Rational& x) const { return x.to_string(); }
  std::string descriptor() const { return "Q"; }
  bool contains(const Rational&) const { return true; }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

class PrimeField {
 public:
  using value_type = ModP;
  static constexpr bool characteristic_zero = false;

  PrimeField() : PrimeField(2) {}
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 32)) throw field_error("modulus must be below 2^32");
    if (!detail::is_prime(p)) throw field_error(std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const { return p_; }

  ModP zero() const { return ModP(0, p_); }
  ModP one() const { return ModP(1, p_); }
  ModP from_integer(std::int64_t v) const { return ModP(v, p_); }

  /// Decimal integer (optionally negative), reduced mod p.
  ModP parse(std::string_view text) const {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
      negative = true;
      body.remove_prefix(1);
    }
    if (body.empty()) throw parse_error("malformed residue: '" + std::string(text) + "'");
    std::uint64_t acc = 0;
    for (char ch : body) {
      if (ch < '0' || ch > '9') throw parse_error("malformed residue: '" + std::string(text) + "'");
      acc = (acc * 10 + static_cast<std::uint64_t>(ch - '0')) % p_;
    }
    ModP out(static_cast<std::int64_t>(acc), p_);
    return negative ? -out : out;
  }

  std::string format(const ModP& x) const { return x.to_string(); }
  std::string descriptor() const { return "Fp:" + std::to_string(p_); }
  bool contains(const ModP& x) const { return x.modulus() == p_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

static_assert(ExactField<RationalField>);
static_assert(ExactField<PrimeField>);

}  // namespace bcpolar
