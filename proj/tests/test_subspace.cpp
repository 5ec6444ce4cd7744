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

TEST(Subspace, CanonicalBasisMakesEqualityStructural) {
  const auto u = Subspace<RationalField>::span_of(q({{1, 2}, {1, 2}, {0, 0}}));
  const auto v = Subspace<RationalField>::span_of(q({{3}, {3}, {0}}));
  EXPECT_EQ(u, v);
  EXPECT_EQ(u.dim(), 1u);
  EXPECT_TRUE(u.contains(q({{5}, {5}, {0}})));
  EXPECT_FALSE(u.contains(q({{1}, {0}, {0}})));
  EXPECT_THROW(u.contains(q({{1}, {1}})), dimension_error);
  EXPECT_EQ(Subspace<RationalField>::zero(kQ, 3).dim(), 0u);
  EXPECT_EQ(Subspace<RationalField>::full(kQ, 3), range_of(QMatrix::identity(kQ, 3)));
}

TEST(Subspace, SumAndIntersectionDimensions) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto n = 1 + rng.below(5);
    const auto u = range_of(suite::random_of_rank_at_most(kF7, n, rng.below(n + 1), rng));
    const auto v = range_of(suite::random_of_rank_at_most(kF7, n, rng.below(n + 1), rng));
    const auto s = sum(u, v);
    const auto w = intersect(u, v);
    EXPECT_EQ(s.dim() + w.dim(), u.dim() + v.dim());
    EXPECT_TRUE(u.contains(w.basis()) && v.contains(w.basis()));
    EXPECT_TRUE(s.contains(u.basis()) && s.contains(v.basis()));
  }
}

TEST(Subspace, RangeAndNullspaceOfKnownMatrix) {
  const auto a = q({{1, 1}, {0, 0}});
  EXPECT_EQ(range_of(a), Subspace<RationalField>::span_of(q({{1}, {0}})));
  EXPECT_EQ(nullspace_of(a), Subspace<RationalField>::span_of(q({{1}, {-1}})));
}

TEST(Projector, HasPrescribedRangeAndKernel) {
  const auto u = Subspace<RationalField>::span_of(q({{1}, {1}}));
  const auto v = Subspace<RationalField>::span_of(q({{0}, {1}}));
  const auto p = projector_onto_along(u, v);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->matrix, q({{1, 0}, {1, 0}}));
  EXPECT_FALSE(projector_onto_along(u, u).has_value());
  EXPECT_FALSE(projector_onto_along(u, Subspace<RationalField>::zero(kQ, 2)).has_value());
}

TEST(Projector, IsTheUniqueIdempotentWithThatRangeAndKernelOverF2) {
  const auto space = all_matrices(kF2, 3, 3);
  std::size_t idempotents = 0;
  for (const auto& e : space) {
    if (!is_idempotent(e)) continue;
    ++idempotents;
    const auto p = projector_onto_along(range_of(e), nullspace_of(e));
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(p->matrix, e);
  }
  EXPECT_GT(idempotents, 2u);
}

TEST(OperatorCharacterization, IdentityTriple) {
  const auto one = QMatrix::identity(kQ, 3);
  const auto v = operator_characterization(one, one, one);
  EXPECT_TRUE(v.invertible && v.polar && v.projectors);
  EXPECT_TRUE(v.p->matrix.is_identity());
  EXPECT_TRUE(v.q->matrix.is_identity());
  EXPECT_TRUE(v.blocks->iq_a_ip.is_zero());
}

TEST(OperatorCharacterization, AgreesWithBcInverseOverF2) {
  const auto space = all_matrices(kF2, 2, 2);
  for (const auto& a : space)
    for (const auto& b : space)
      for (const auto& c : space) {
        const auto v = operator_characterization(a, b, c);
        ASSERT_TRUE(v.agree()) << a << b << c;
        const auto y = bc_inverse(a, b, c);
        ASSERT_EQ(v.invertible, y.has_value());
        if (y) {
          EXPECT_EQ(v.p->matrix, y->left_idempotent);
          EXPECT_EQ(v.q->matrix, y->right_idempotent);
        }
      }
}

TEST(AlongOperator, BasicCases) {
  const auto a = q({{2, 1}, {7, 4}});
  const AlongVerdicts all_true{true, true, true, true, true};
  EXPECT_EQ(along_operator_characterization(a, a), all_true);
  const auto n = q({{0, 1}, {0, 0}});
  EXPECT_EQ(along_operator_characterization(n, n), AlongVerdicts{});
}

TEST(AlongOperator, SingleProjectorReadingIsTooStrong) {
  // a is invertible along b (b a b = b, so y = b), yet N(b a) != N(b).
  const auto a = q({{1, 0}, {0, 0}});
  const auto b = q({{1, 1}, {0, 0}});
  EXPECT_EQ(b * a * b, b);
  const auto v = along_operator_characterization(a, b);
  EXPECT_TRUE(v.agree());
  EXPECT_TRUE(v.invertible_along);
  EXPECT_FALSE(v.single_projector);
}

TEST(AlongOperator, SingleProjectorImpliesInvertibilityOverF2) {
  const auto space = all_matrices(kF2, 2, 2);
  for (const auto& a : space)
    for (const auto& b : space) {
      const auto v = along_operator_characterization(a, b);
      EXPECT_TRUE(v.agree()) << a << b;
      if (v.single_projector) {
        EXPECT_TRUE(v.invertible_along) << a << b;
      }
    }
}

}  // namespace
}  // namespace bcpolar
