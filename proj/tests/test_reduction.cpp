#include <gtest/gtest.h>

#include "support.hpp"

namespace bcpolar {
namespace {

using testing::all_matrices;
using testing::image_size;
using testing::kF2;
using testing::kF7;
using testing::kQ;
using testing::q;
using testing::Rng;

TEST(Rref, ReducesKnownMatrix) {
  const auto r = rref(q({{2, 4, 2}, {1, 2, 3}, {0, 0, 1}}));
  EXPECT_EQ(r.reduced, q({{1, 2, 0}, {0, 0, 1}, {0, 0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(r.transform * q({{2, 4, 2}, {1, 2, 3}, {0, 0, 1}}), r.reduced);
}

TEST(Rank, MatchesImageSizeOverF2) {
  // |{A x}| = 2^rank(A), counted without elimination.
  for (const auto& a : all_matrices(kF2, 2, 3)) {
    const auto r = rank(a);
    EXPECT_EQ(image_size(a), std::size_t{1} << r) << a;
  }
}

TEST(SolveRight, SolutionsSatisfyTheSystem) {
  Rng rng(1);
  int consistent = 0;
  for (int i = 0; i < 200; ++i) {
    const auto n = 1 + rng.below(4), m = 1 + rng.below(4);
    const auto a = suite::random_of_rank_at_most(kF7, n, rng.below(n + 1), rng).block(0, n, 0, std::min(n, m));
    const auto b = suite::random_matrix(kF7, n, 2, rng);
    if (auto x = solve_right(a, b)) {
      ++consistent;
      EXPECT_EQ(a * *x, b);
    } else {
      // Inconsistent exactly when appending b raises the rank.
      EXPECT_GT(rank(hconcat(a, b)), rank(a));
    }
  }
  EXPECT_GT(consistent, 0);
}

TEST(SolveLeft, SolutionsSatisfyTheSystem) {
  const auto a = q({{1, 2}, {2, 4}});
  EXPECT_FALSE(solve_left(a, q({{1, 0}, {0, 1}})).has_value());
  auto x = solve_left(a, q({{3, 6}}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x * a, q({{3, 6}}));
}

TEST(KernelBasis, SpansTheNullspace) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto n = 1 + rng.below(5);
    const auto a = suite::random_of_rank_at_most(kF7, n, rng.below(n + 1), rng);
    const auto k = kernel_basis(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols(), n - rank(a));
    EXPECT_EQ(rank(k), k.cols());
  }
}

TEST(RankFactorize, ReproducesTheMatrix) {
  const auto a = q({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  const auto fac = rank_factorize(a);
  EXPECT_EQ(fac.rank, 2u);
  EXPECT_EQ(fac.left * fac.right, a);
  EXPECT_EQ(fac.left.cols(), 2u);
  EXPECT_EQ(fac.right.rows(), 2u);
  const auto zero = rank_factorize(QMatrix::zero(kQ, 2, 2));
  EXPECT_EQ(zero.rank, 0u);
  EXPECT_EQ(zero.left * zero.right, QMatrix::zero(kQ, 2, 2));
}

TEST(OneSidedInverses, ExistExactlyForFullRank) {
  EXPECT_EQ(*left_inverse(q({{1}, {1}})), q({{1, 0}}));
  EXPECT_FALSE(left_inverse(q({{1, 1}})).has_value());
  const auto g = q({{1, 2, 3}, {0, 1, 4}});
  EXPECT_TRUE((g * *right_inverse(g)).is_identity());
  EXPECT_FALSE(right_inverse(g.transpose()).has_value());
}

TEST(TwoSidedInverse, InvertsExactlyTheNonsingularMatrices) {
  const auto a = q({{2, 1}, {7, 4}});
  EXPECT_EQ(*two_sided_inverse(a), q({{4, -1}, {-7, 2}}));
  EXPECT_FALSE(two_sided_inverse(q({{1, 2}, {2, 4}})).has_value());
  for (const auto& m : all_matrices(kF2, 2, 2)) {
    const bool invertible = is_invertible(m);
    EXPECT_EQ(invertible, image_size(m) == 4);
    if (invertible) {
      EXPECT_TRUE((m * *two_sided_inverse(m)).is_identity());
    }
  }
  EXPECT_FALSE(two_sided_inverse(q({{1, 2, 3}})).has_value());
}

}  // namespace
}  // namespace bcpolar
