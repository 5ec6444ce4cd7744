#pragma once

// Shared helpers for the unit tests: small-field enumeration and brute-force
// oracles that do not go through the library's elimination code.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bcpolar.hpp"

namespace bcpolar::testing {

using suite::Rng;

inline const PrimeField kF2{2};
inline const PrimeField kF7{7};
inline const RationalField kQ{};

inline QMatrix q(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return QMatrix::from_rows(kQ, rows);
}

inline FpMatrix f2(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return FpMatrix::from_rows(kF2, rows);
}

inline FpMatrix f7(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return FpMatrix::from_rows(kF7, rows);
}

/// Every rows x cols matrix over F_p (p^(rows*cols) of them).
inline std::vector<FpMatrix> all_matrices(const PrimeField& f, std::size_t rows, std::size_t cols) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < rows * cols; ++i) count *= f.modulus();
  std::vector<FpMatrix> out;
  for (std::uint64_t code = 0; code < count; ++code) {
    FpMatrix m(f, rows, cols);
    std::uint64_t rest = code;
    for (std::size_t k = 0; k < rows * cols; ++k, rest /= f.modulus())
      m(k / cols, k % cols) = f.from_integer(static_cast<std::int64_t>(rest % f.modulus()));
    out.push_back(std::move(m));
  }
  return out;
}

/// Number of distinct vectors A x over all x in F_p^n; equals p^rank(A).
inline std::size_t image_size(const FpMatrix& a) {
  std::vector<FpMatrix> seen;
  for (const auto& x : all_matrices(a.field(), a.cols(), 1)) {
    auto y = a * x;
    if (std::find(seen.begin(), seen.end(), y) == seen.end()) seen.push_back(std::move(y));
  }
  return seen.size();
}

}  // namespace bcpolar::testing
