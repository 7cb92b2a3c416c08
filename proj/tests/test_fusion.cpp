#include <gtest/gtest.h>

#include "dybe/fusion.hpp"
#include "support.hpp"

using dybe::BlockIndex;
using dybe::Rat;
using dybe::RatQ;
using dybe::testing::lam;
using dybe::testing::lam_plus;
namespace fu = dybe::fusion;

TEST(Fusion, EntryExamples) {
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(fu::fusion_A(n, n, lam(), 3, 4), RatQ(1));
    EXPECT_EQ(fu::fusion_B(n, n, lam(), 3, 4), RatQ(1));
  }
  EXPECT_EQ(fu::fusion_A(0, 1, lam(), 1, 1), RatQ(-1) / lam_plus(1));
  EXPECT_EQ(fu::fusion_B(0, 1, lam(), 1, 1), RatQ(1) / lam_plus(1));
  EXPECT_TRUE(fu::fusion_A(2, 1, lam(), 1, 1).is_zero());
  EXPECT_TRUE(fu::fusion_B(2, 1, lam(), 1, 1).is_zero());
  RatQ row = fu::fusion_A(0, 0, lam(), 1, 1) * fu::fusion_B(0, 1, lam(), 1, 1) +
             fu::fusion_A(0, 1, lam(), 1, 1) * fu::fusion_B(1, 1, lam(), 1, 1);
  EXPECT_TRUE(row.is_zero());
}

TEST(Fusion, NonGenericLambda) {
  EXPECT_THROW(fu::fusion_A(0, 1, Rat(-1), 1, 1), dybe::non_generic_lambda);
  EXPECT_THROW(fu::assemble_J(1, 1, Rat(-1)), dybe::non_generic_lambda);
}

TEST(Fusion, DependsOnlyOnShiftedParameters) {
  for (int gamma = 0; gamma <= 4; ++gamma)
    for (int s = 0; s <= 6; ++s)
      for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= n; ++m) {
          RatQ a = lam() - RatQ(gamma);
          RatQ b(gamma - s);
          ASSERT_EQ(fu::fusion_A(m, n, lam(), gamma, s), fu::fusion_A_params(m, n, a, b));
          ASSERT_EQ(fu::fusion_B(m, n, lam(), gamma, s), fu::fusion_B_params(m, n, a, b));
          // (lambda, gamma, s) -> (lambda + t, gamma + t, s + t) fixes both superscripts.
          ASSERT_EQ(fu::fusion_A(m, n, lam(), gamma, s), fu::fusion_A(m, n, lam_plus(3), gamma + 3, s + 3));
        }
}

TEST(Fusion, InversePairBothOrders) {
  for (int gamma = 0; gamma <= 5; ++gamma)
    for (int s = 0; s <= 10; ++s)
      for (int size = 1; size <= 6; ++size) {
        for (int m = 0; m < size; ++m)
          for (int n = 0; n < size; ++n) {
            RatQ ab(0), ba(0);
            for (int k = m; k <= n; ++k) {
              ab = ab + fu::fusion_A(m, k, lam(), gamma, s) * fu::fusion_B(k, n, lam(), gamma, s);
              ba = ba + fu::fusion_B(m, k, lam(), gamma, s) * fu::fusion_A(k, n, lam(), gamma, s);
            }
            ASSERT_EQ(ab, RatQ(m == n ? 1 : 0));
            ASSERT_EQ(ba, RatQ(m == n ? 1 : 0));
          }
      }
}

TEST(Fusion, AssembleExamples) {
  auto j00 = fu::assemble_J(0, 0, lam());
  ASSERT_EQ(j00.blocks().size(), 1u);
  EXPECT_TRUE(j00.is_identity());

  auto j = fu::assemble_J(1, 1, lam());
  const auto& b = j.block(1);
  EXPECT_EQ(b.lo, 0);
  EXPECT_EQ(b.hi, 1);
  EXPECT_EQ(b.at(0, 0), RatQ(1));
  EXPECT_EQ(b.at(0, 1), RatQ(-1) / lam_plus(1));
  EXPECT_EQ(b.at(1, 0), RatQ(0));
  EXPECT_EQ(b.at(1, 1), RatQ(1));

  auto ji = fu::assemble_J_inv(1, 1, lam());
  EXPECT_EQ(ji.block(1).at(0, 1), RatQ(1) / lam_plus(1));
  EXPECT_TRUE((j * ji).is_identity());
}

TEST(Fusion, AssembledInversesMultiplyToIdentity) {
  for (int delta = 0; delta <= 5; ++delta)
    for (int gamma = 0; gamma <= 5; ++gamma) {
      auto j = fu::assemble_J(delta, gamma, lam());
      auto ji = fu::assemble_J_inv(delta, gamma, lam());
      ASSERT_TRUE((j * ji).is_identity());
      ASSERT_TRUE((ji * j).is_identity());
    }
}

TEST(Fusion, MatchesIntertwinerComposition) {
  for (int delta = 0; delta <= 3; ++delta)
    for (int gamma = 0; gamma <= 3; ++gamma)
      ASSERT_EQ(fu::assemble_J(delta, gamma, lam()), fu::fusion_from_intertwiners(delta, gamma, lam()))
          << delta << " " << gamma;
  EXPECT_TRUE(fu::fusion_from_intertwiners(0, 3, lam()).is_identity());
}

TEST(Fusion, RationalLambdaSpecializes) {
  Rat l(7, 13);
  auto sym = fu::assemble_J(3, 2, lam());
  auto num = fu::assemble_J(3, 2, l);
  EXPECT_EQ(sym.map_entries([&](const RatQ&) { return RatQ(0); }).blocks().size(), num.blocks().size());
  for (const auto& [s, blk] : sym.blocks())
    for (int m = blk.lo; m <= blk.hi; ++m)
      for (int n = blk.lo; n <= blk.hi; ++n) ASSERT_EQ(dybe::eval(blk.at(m, n), l), num.block(s).at(m, n));
}

TEST(Fusion, ReindexAndFlipAreInvolutions) {
  auto j = fu::assemble_J(3, 2, lam());
  EXPECT_EQ(j.reindexed().reindexed(), j);
  EXPECT_EQ(j.flipped().flipped(), j);
  EXPECT_EQ(j.reindexed().kind(), BlockIndex::second_factor);
  EXPECT_EQ(j.flipped().delta(), 2);
}
