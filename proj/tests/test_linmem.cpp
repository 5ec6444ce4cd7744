#include <gtest/gtest.h>

#include "support.hpp"

namespace bcpolar {
namespace {

using testing::all_matrices;
using testing::f2;
using testing::kF2;
using testing::kF7;
using testing::q;
using testing::Rng;

TEST(Vec, StacksColumns) {
  const auto m = q({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(vec(m), q({{1}, {4}, {2}, {5}, {3}, {6}}));
  EXPECT_EQ(unvec(vec(m), 2, 3), m);
  EXPECT_THROW(unvec(vec(m), 4, 2), dimension_error);
}

TEST(Kron, MatchesDefinitionOnSmallCase) {
  EXPECT_EQ(kron(q({{1, 2}}), q({{0, 1}, {1, 0}})), q({{0, 1, 0, 2}, {1, 0, 2, 0}}));
}

TEST(Kron, VectorizesSandwichProducts) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto r = 1 + rng.below(3), s = 1 + rng.below(3), t = 1 + rng.below(3), u = 1 + rng.below(3);
    const auto b = suite::random_matrix(kF7, r, s, rng);
    const auto x = suite::random_matrix(kF7, s, t, rng);
    const auto c = suite::random_matrix(kF7, t, u, rng);
    EXPECT_EQ(vec(b * x * c), kron(c.transpose(), b) * vec(x));
  }
}

TEST(SolveSandwich, AgreesWithExhaustiveSearchOverF2) {
  const auto space = all_matrices(kF2, 2, 2);
  for (std::size_t i = 0; i < space.size(); i += 3)
    for (std::size_t j = 0; j < space.size(); j += 5)
      for (const auto& target : space) {
        const auto& b = space[i];
        const auto& c = space[j];
        const bool exists =
            std::any_of(space.begin(), space.end(), [&](const auto& x) { return b * x * c == target; });
        const auto witness = solve_sandwich(b, c, target);
        ASSERT_EQ(witness.has_value(), exists) << b << c << target;
        if (witness) {
          EXPECT_EQ(b * witness->solution() * c, target);
        }
      }
}

TEST(SolveSandwich, RectangularShapes) {
  const auto b = q({{1, 0, 0}, {0, 1, 0}});
  const auto c = q({{1}, {1}, {0}, {0}});
  EXPECT_THROW(solve_sandwich(b, c, q({{1, 2}, {3, 4}})), dimension_error);
  const auto c2 = q({{1, 0}, {0, 1}, {0, 0}});
  const auto w = solve_sandwich(b, c2, q({{1, 2}, {3, 4}}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->solution().rows(), 3u);
  EXPECT_EQ(w->solution().cols(), 3u);
  EXPECT_FALSE(in_set(q({{1, 2}, {3, 4}}), b, q({{1, 0}, {0, 0}, {0, 0}})));
}

TEST(SolveSandwich, MembershipFromWorkedCase) {
  // [[0,0],[0,1]] is not in b R (c a) for this nilpotent triple.
  const auto a = q({{0, 0}, {1, 0}});
  const auto b = q({{1, -1}, {0, 0}});
  const auto c = q({{0, 1}, {0, 1}});
  EXPECT_FALSE(in_set(q({{0, 0}, {0, 1}}), b, c * a));
  EXPECT_TRUE(in_set(q({{1, 0}, {0, 0}}), b, c * a));
}

TEST(SolveLinearSystem, CombinesSeveralEquations) {
  // [1 0] X = [1 2] fixes the first row, X [0; 1] = [2; 3] the second column.
  const std::array<LinearEquation<RationalField>, 2> eqs{
      LinearEquation<RationalField>{{{q({{1, 0}}), q({{1, 0}, {0, 1}})}}, q({{1, 2}})},
      LinearEquation<RationalField>{{{q({{1, 0}, {0, 1}}), q({{0}, {1}})}}, q({{2}, {3}})}};
  auto x = solve_linear_system(std::span<const LinearEquation<RationalField>>(eqs), 2, 2);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(x->block(0, 1, 0, 2), q({{1, 2}}));
  EXPECT_EQ(x->block(0, 2, 1, 1), q({{2}, {3}}));
}

TEST(Commutant, DimensionMatchesBruteForceCount) {
  const auto space = all_matrices(kF2, 2, 2);
  for (const auto& a : space) {
    const auto basis = commutant_basis(a);
    const auto count = std::count_if(space.begin(), space.end(), [&](const auto& x) { return commutes(a, x); });
    EXPECT_EQ(static_cast<std::size_t>(count), std::size_t{1} << basis.size()) << a;
    for (const auto& y : basis) EXPECT_TRUE(commutes(a, y));
  }
}

TEST(DoubleCommutant, MatchesDefinitionOverF2) {
  const auto space = all_matrices(kF2, 2, 2);
  for (const auto& a : space) {
    std::vector<FpMatrix> comm;
    for (const auto& x : space)
      if (commutes(a, x)) comm.push_back(x);
    for (const auto& p : space) {
      const bool expected = std::all_of(comm.begin(), comm.end(), [&](const auto& y) { return commutes(p, y); });
      EXPECT_EQ(in_double_commutant(p, a), expected) << a << p;
    }
  }
  EXPECT_TRUE(in_double_commutant(f2({{1, 1}, {0, 1}}).pow(2), f2({{1, 1}, {0, 1}})));
}

}  // namespace
}  // namespace bcpolar
