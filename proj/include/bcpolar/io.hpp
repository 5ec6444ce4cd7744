#pragma once

// JSON forms.
//
//   field:  "Q"  |  {"Fp": p}
//   matrix: {"field": <field>, "rows": n, "cols": m,
//            "entries": [["1", "-1/2"], ["0", "3"]]}
//
// Rational entries are "n" or "n/d"; F_p entries are decimal residues. Plain
// JSON integers are accepted on input as a convenience.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "bcpolar/field.hpp"
#include "bcpolar/matrix.hpp"

namespace bcpolar {

using json = nlohmann::json;
using AnyField = std::variant<RationalField, PrimeField>;

inline json field_to_json(const RationalField&) { return "Q"; }
inline json field_to_json(const PrimeField& f) { return json{{"Fp", f.modulus()}}; }

inline AnyField field_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return RationalField{};
    throw parse_error("unknown field '" + j.get<std::string>() + "'");
  }
  if (j.is_object() && j.size() == 1 && j.contains("Fp") && j["Fp"].is_number_integer() &&
      j["Fp"].get<std::int64_t>() > 0)
    return PrimeField(j["Fp"].get<std::uint64_t>());
  throw parse_error("field must be \"Q\" or {\"Fp\": p}, got " + j.dump());
}

/// Parses "Q" or "Fp:<p>" (the command-line spelling).
inline AnyField field_from_flag(const std::string& text) {
  if (text == "Q") return RationalField{};
  if (text.rfind("Fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("bad field flag '" + text + "'");
    return PrimeField(std::stoull(digits));
  }
  throw parse_error("field must be Q or Fp:<p>, got '" + text + "'");
}

template <ExactField F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().format(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"field", field_to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline AnyField matrix_field(const json& j) {
  if (!j.is_object() || !j.contains("field")) throw parse_error("matrix JSON needs a \"field\" member");
  return field_from_json(j["field"]);
}

template <ExactField F>
Matrix<F> matrix_from_json(const json& j, const F& field) {
  if (!j.is_object()) throw parse_error("matrix must be a JSON object");
  for (const char* key : {"field", "rows", "cols", "entries"})
    if (!j.contains(key)) throw parse_error(std::string("matrix JSON lacks \"") + key + "\"");
  const AnyField declared = field_from_json(j["field"]);
  if (!std::holds_alternative<F>(declared) || !(std::get<F>(declared) == field))
    throw field_error("matrix field " + j["field"].dump() + " does not match " + field.descriptor());
  const auto non_negative = [](const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; };
  if (!non_negative(j["rows"]) || !non_negative(j["cols"]))
    throw parse_error("rows/cols must be non-negative integers");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const json& entries = j["entries"];
  if (!entries.is_array() || entries.size() != rows) throw dimension_error("entries do not have 'rows' rows");
  Matrix<F> m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!entries[i].is_array() || entries[i].size() != cols) throw dimension_error("entries row " + std::to_string(i) + " does not have 'cols' entries");
    for (std::size_t j2 = 0; j2 < cols; ++j2) {
      const json& e = entries[i][j2];
      if (e.is_string()) {
        m(i, j2) = field.parse(e.get<std::string>());
      } else if (e.is_number_integer()) {
        m(i, j2) = field.from_integer(e.get<std::int64_t>());
      } else {
        throw parse_error("matrix entry must be a string or an integer, got " + e.dump());
      }
    }
  }
  return m;
}

}  // namespace bcpolar
