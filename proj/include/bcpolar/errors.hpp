#pragma once

#include <stdexcept>
#include <string>

namespace bcpolar {

/// Operands live in different coefficient fields (e.g. F_5 vs F_7).
struct field_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Non-conformable matrix shapes.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct division_by_zero : std::domain_error {
  using std::domain_error::domain_error;
};

/// Malformed textual input (scalars, matrix JSON, problem files).
struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on inputs outside its documented domain
/// (e.g. a non-idempotent "idempotent").
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computed object failed one of the identities it is supposed to satisfy.
/// Seeing this means a bug in the library, never bad user input.
struct contract_violation : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw contract_violation(what);
}

}  // namespace detail
}  // namespace bcpolar
