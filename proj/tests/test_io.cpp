#include <gtest/gtest.h>

#include "support.hpp"

namespace bcpolar {
namespace {

using testing::f7;
using testing::kF7;
using testing::kQ;
using testing::q;

TEST(MatrixJson, RoundTripsRationals) {
  const auto m = q({{1, -2}, {0, 3}}).scale(Rational::parse("-1/3"));
  const auto j = matrix_to_json(m);
  EXPECT_EQ(j.dump(), R"({"cols":2,"entries":[["-1/3","2/3"],["0","-1"]],"field":"Q","rows":2})");
  EXPECT_EQ(matrix_from_json(j, kQ), m);
}

TEST(MatrixJson, RoundTripsResidues) {
  const auto m = f7({{6, 0, 3}});
  const auto j = matrix_to_json(m);
  EXPECT_EQ(j["field"], json({{"Fp", 7}}));
  EXPECT_EQ(matrix_from_json(j, kF7), m);
}

TEST(MatrixJson, AcceptsIntegerEntries) {
  const auto j = json::parse(R"({"field":"Q","rows":1,"cols":2,"entries":[[1,-4]]})");
  EXPECT_EQ(matrix_from_json(j, kQ), q({{1, -4}}));
}

TEST(MatrixJson, RejectsMalformedInput) {
  auto parse = [](const char* text) { return matrix_from_json(json::parse(text), kQ); };
  EXPECT_THROW(parse(R"([1,2])"), parse_error);
  EXPECT_THROW(parse(R"({"field":"Q","rows":1,"cols":1})"), parse_error);
  EXPECT_THROW(parse(R"({"field":"Q","rows":2,"cols":1,"entries":[["1"]]})"), dimension_error);
  EXPECT_THROW(parse(R"({"field":"Q","rows":1,"cols":2,"entries":[["1"]]})"), dimension_error);
  EXPECT_THROW(parse(R"({"field":"Q","rows":1,"cols":1,"entries":[["x"]]})"), parse_error);
  EXPECT_THROW(parse(R"({"field":"Q","rows":1,"cols":1,"entries":[[1.5]]})"), parse_error);
  EXPECT_THROW(parse(R"({"field":"R","rows":1,"cols":1,"entries":[["1"]]})"), parse_error);
  EXPECT_THROW(parse(R"({"field":"Q","rows":-1,"cols":1,"entries":[]})"), parse_error);
}

TEST(MatrixJson, FieldMismatchIsAFieldError) {
  const auto j = matrix_to_json(f7({{1}}));
  EXPECT_THROW(matrix_from_json(j, kQ), field_error);
  EXPECT_THROW(matrix_from_json(j, PrimeField(5)), field_error);
}

TEST(FieldJson, ParsesBothSpellings) {
  EXPECT_TRUE(std::holds_alternative<RationalField>(field_from_json("Q")));
  EXPECT_EQ(std::get<PrimeField>(field_from_json(json{{"Fp", 11}})).modulus(), 11u);
  EXPECT_THROW(field_from_json(json{{"Fp", 12}}), field_error);
  EXPECT_THROW(field_from_json(json{{"Fp", "7"}}), parse_error);
  EXPECT_TRUE(std::holds_alternative<RationalField>(field_from_flag("Q")));
  EXPECT_EQ(std::get<PrimeField>(field_from_flag("Fp:7")).modulus(), 7u);
  EXPECT_THROW(field_from_flag("Fp:"), parse_error);
  EXPECT_THROW(field_from_flag("Fp:x"), parse_error);
  EXPECT_THROW(field_from_flag("Fp:9"), field_error);
  EXPECT_THROW(field_from_flag("R"), parse_error);
}

}  // namespace
}  // namespace bcpolar
