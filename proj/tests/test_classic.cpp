#include <gtest/gtest.h>

#include "support.hpp"

namespace bcpolar {
namespace {

using testing::all_matrices;
using testing::kF2;
using testing::kF7;
using testing::kQ;
using testing::q;
using testing::Rng;

bool is_drazin_inverse(const FpMatrix& a, const FpMatrix& x, std::size_t k) {
  return x * a * x == x && commutes(a, x) && a.pow(k + 1) * x == a.pow(k);
}

TEST(InnerInverse, SatisfiesAXA) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto n = 1 + rng.below(4), m = 1 + rng.below(4);
    const auto a = suite::random_matrix(kF7, n, m, rng) * suite::random_of_rank_at_most(kF7, m, rng.below(m + 1), rng);
    const auto x = inner_inverse(a);
    EXPECT_EQ(x.rows(), a.cols());
    EXPECT_EQ(a * x * a, a);
  }
  EXPECT_EQ(inner_inverse(q({{0, 0}, {1, 0}})), q({{0, 1}, {0, 0}}));
}

TEST(GroupInverse, ExistsIffRankStabilizesAtOne) {
  for (const auto& a : all_matrices(kF2, 2, 2)) {
    const auto g = group_inverse(a);
    EXPECT_EQ(g.has_value(), rank(a) == rank(a * a)) << a;
    // Unique solution of the three group identities, found by search.
    std::size_t found = 0;
    for (const auto& x : all_matrices(kF2, 2, 2))
      if (is_group_inverse(a, x)) {
        ++found;
        ASSERT_TRUE(g.has_value());
        EXPECT_EQ(x, *g);
      }
    EXPECT_EQ(found, g ? 1u : 0u);
  }
  EXPECT_FALSE(group_inverse(q({{0, 1}, {0, 0}})).has_value());
  EXPECT_EQ(*group_inverse(q({{2, 0}, {0, 0}})), q({{1, 0}, {0, 0}}).scale(Rational::parse("1/2")));
}

TEST(Drazin, NilpotentAndInvertibleCases) {
  const auto n = q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  const auto dn = drazin(n);
  EXPECT_EQ(dn.index, 3u);
  EXPECT_TRUE(dn.d_inverse.is_zero());
  EXPECT_TRUE(dn.spectral_idempotent.is_identity());

  const auto a = q({{2, 1}, {7, 4}});
  const auto da = drazin(a);
  EXPECT_EQ(da.index, 0u);
  EXPECT_EQ(da.d_inverse, *two_sided_inverse(a));
  EXPECT_TRUE(da.spectral_idempotent.is_zero());
}

TEST(Drazin, MatchesExhaustiveSearchOverF2) {
  for (const auto& a : all_matrices(kF2, 2, 2)) {
    const auto d = drazin(a);
    std::size_t found = 0;
    for (const auto& x : all_matrices(kF2, 2, 2))
      if (is_drazin_inverse(a, x, d.index)) {
        ++found;
        EXPECT_EQ(x, d.d_inverse) << a;
      }
    EXPECT_EQ(found, 1u) << a;
  }
}

TEST(Drazin, MatchesLinearSystemOracle) {
  // X = A^k Z with A^{2k+1} Z = A^k and A X = X A, at the index k found by
  // rank stabilization of powers.
  Rng rng(8);
  for (int i = 0; i < 150; ++i) {
    const auto n = 1 + rng.below(5);
    const auto a = rng.coin() ? suite::random_singular(kF7, n, rng) : suite::random_matrix(kF7, n, n, rng);
    std::size_t k = 0;
    while (rank(a.pow(k)) != rank(a.pow(k + 1))) ++k;
    const auto ak = a.pow(k);
    const auto zero = FpMatrix::zero(kF7, n, n);
    const std::array<LinearEquation<PrimeField>, 2> eqs{
        LinearEquation<PrimeField>{{{a.pow(2 * k + 1), identity_like(a)}}, ak},
        LinearEquation<PrimeField>{{{a * ak, identity_like(a)}, {-ak, a}}, zero}};
    const auto z = solve_linear_system(std::span<const LinearEquation<PrimeField>>(eqs), n, n);
    ASSERT_TRUE(z.has_value());
    const auto d = drazin(a);
    EXPECT_EQ(d.index, k);
    EXPECT_EQ(d.d_inverse, ak * *z);
    EXPECT_TRUE(verify_polar(a, d.spectral_idempotent));
  }
}

TEST(MoorePenrose, KnownValues) {
  EXPECT_EQ(moore_penrose(q({{1, 2}, {2, 4}})), q({{1, 2}, {2, 4}}).scale(Rational::parse("1/25")));
  EXPECT_EQ(moore_penrose(q({{1}, {1}})), q({{1, 1}}).scale(Rational::parse("1/2")));
  EXPECT_EQ(moore_penrose(QMatrix::zero(kQ, 2, 3)), QMatrix::zero(kQ, 3, 2));
}

TEST(MoorePenrose, PenroseIdentitiesOnRandomMatrices) {
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    const auto n = 1 + rng.below(4), m = 1 + rng.below(4);
    const auto a = suite::random_matrix(kQ, n, m, rng) * suite::random_of_rank_at_most(kQ, m, rng.below(m + 1), rng);
    const auto x = moore_penrose(a);
    EXPECT_TRUE(satisfies_penrose(a, x));
  }
}

TEST(MoorePenrose, RejectsPrimeFields) {
  EXPECT_THROW(moore_penrose(FpMatrix::identity(kF7, 2)), field_error);
}

TEST(VerifyPolar, AcceptsOnlyTheSpectralIdempotent) {
  const auto a = q({{1, 1}, {0, 0}});
  const auto d = drazin(a);
  EXPECT_TRUE(verify_polar(a, d.spectral_idempotent));
  EXPECT_FALSE(verify_polar(a, QMatrix::zero(kQ, 2, 2)));  // a + 0 singular
  EXPECT_FALSE(verify_polar(a, QMatrix::identity(kQ, 2)));  // a * 1 not nilpotent
  EXPECT_THROW(verify_polar(a, QMatrix::identity(kQ, 3)), dimension_error);
}

}  // namespace
}  // namespace bcpolar
