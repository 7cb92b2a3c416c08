#include <gtest/gtest.h>

#include "dybe/exchange.hpp"
#include "support.hpp"

using dybe::BlockIndex;
using dybe::Rat;
using dybe::RatQ;
using dybe::testing::lam;
using dybe::testing::lam_plus;
namespace ex = dybe::exchange;

TEST(Exchange, WeightZeroBlockOfFundamentalPair) {
  auto r = ex::assemble_R(1, 1, lam());
  const auto& b = r.block(1);
  EXPECT_EQ(b.at(0, 0), RatQ(1));
  EXPECT_EQ(b.at(0, 1), RatQ(-1) / lam_plus(1));
  EXPECT_EQ(b.at(1, 0), RatQ(1) / lam_plus(1));
  EXPECT_EQ(b.at(1, 1), RatQ(1) - RatQ(1) / (lam_plus(1) * lam_plus(1)));
  EXPECT_EQ(r.block(0).m, dybe::Matrix<RatQ>::identity(1));
  for (int m = 0; m <= 1; ++m)
    for (int n = 0; n <= 1; ++n) {
      EXPECT_EQ(ex::exchange_C(m, n, 1, lam(), 1, 1), b.at(m, n));
      EXPECT_EQ(ex::exchange_C_closed(m, n, 1, lam(), 1, 1), b.at(m, n));
    }
}

TEST(Exchange, TrivialFactorGivesIdentity) {
  for (int d = 0; d <= 3; ++d) {
    EXPECT_TRUE(ex::assemble_R(0, d, lam()).is_identity());
    EXPECT_TRUE(ex::assemble_R(d, 0, lam()).is_identity());
  }
}

TEST(Exchange, SumMatchesSmallSClosedForm) {
  for (int m = 0; m <= 1; ++m)
    for (int n = 0; n <= 1; ++n)
      EXPECT_EQ(ex::exchange_C(m, n, 1, lam(), 2, 1), ex::exchange_C_small_s(m, n, 1, lam(), 2, 1));
}

TEST(Exchange, ClosedFormsAgreeWithSumAndProduct) {
  for (int gamma = 0; gamma <= 4; ++gamma)
    for (int delta = 0; delta <= 4; ++delta) {
      auto r = ex::assemble_R(delta, gamma, lam());
      ASSERT_EQ(r, ex::assemble_R_from_sum(delta, gamma, lam()));
      for (const auto& [s, blk] : r.blocks())
        for (int m = blk.lo; m <= blk.hi; ++m)
          for (int n = blk.lo; n <= blk.hi; ++n) {
            if (s <= delta) ASSERT_EQ(ex::exchange_C_small_s(m, n, s, lam(), gamma, delta), blk.at(m, n));
            if (s >= delta) ASSERT_EQ(ex::exchange_C_large_s(m, n, s, lam(), gamma, delta), blk.at(m, n));
          }
    }
}

TEST(Exchange, InverseTimesMatrixIsIdentity) {
  for (int delta = 0; delta <= 3; ++delta)
    for (int gamma = 0; gamma <= 3; ++gamma) {
      auto r = ex::assemble_R(delta, gamma, lam());
      auto ri = ex::assemble_R_inv(delta, gamma, lam());
      ASSERT_TRUE((r * ri).is_identity());
      ASSERT_TRUE((ri * r).is_identity());
    }
}

TEST(Exchange, InverseIsFlippedExchange) {
  for (int delta = 0; delta <= 4; ++delta)
    for (int gamma = 0; gamma <= 4; ++gamma) {
      auto flipped = ex::assemble_R(gamma, delta, lam()).flipped().with_kind(BlockIndex::second_factor);
      ASSERT_EQ(ex::assemble_R_inv(delta, gamma, lam()), flipped);
    }
}

TEST(Exchange, Biorthogonality) {
  EXPECT_TRUE(ex::biorthogonality_check(3, 2, 0, lam()));
  EXPECT_TRUE(ex::biorthogonality_check(2, 2, 2, lam()));
  EXPECT_TRUE(ex::biorthogonality_check(3, 2, 2, Rat(5, 7)));
  for (int gamma = 0; gamma <= 4; ++gamma)
    for (int delta = 0; delta <= 4; ++delta)
      for (int s = 0; s <= std::min(gamma, delta); ++s) ASSERT_TRUE(ex::biorthogonality_check(gamma, delta, s, lam()));
}

TEST(Exchange, RacahExamples) {
  auto p = ex::racah_parameters(lam(), 1, 1, 1);
  EXPECT_EQ(ex::racah_eval(0, 1, p[0], p[1], p[2], p[3]), RatQ(1));
  EXPECT_EQ(ex::racah_eval(1, 0, p[0], p[1], p[2], p[3]), RatQ(1));
  EXPECT_EQ(ex::racah_eval(1, 1, p[0], p[1], p[2], p[3]), RatQ(1) - lam_plus(1) * lam_plus(1));
}

TEST(Exchange, RacahIdentification) {
  for (int gamma = 0; gamma <= 3; ++gamma)
    for (int delta = 0; delta <= 3; ++delta)
      for (int s = 0; s <= delta; ++s) {
        auto p = ex::racah_parameters(lam(), gamma, delta, s);
        for (int m = 0; m <= std::min(gamma, s); ++m)
          for (int x = 0; x <= std::min(gamma, s); ++x)
            ASSERT_EQ(dybe::eval_terminating(ex::series_small_s(m, x, s, lam(), gamma, delta)),
                      ex::racah_eval(m, x, p[0], p[1], p[2], p[3]));
      }
}

TEST(Exchange, WhippleChain) {
  for (int gamma = 0; gamma <= 3; ++gamma)
    for (int delta = 0; delta <= 3; ++delta)
      for (int s = 0; s <= std::min(gamma, delta); ++s)
        for (int m = 0; m <= s; ++m)
          for (int n = 0; n <= s; ++n) ASSERT_TRUE(ex::whipple_chain_check(m, n, s, lam(), gamma, delta));
}

TEST(Exchange, RationalLambda) {
  Rat l(7, 13);
  auto sym = ex::assemble_R(2, 3, lam());
  auto num = ex::assemble_R(2, 3, l);
  for (const auto& [s, blk] : sym.blocks())
    for (int m = blk.lo; m <= blk.hi; ++m)
      for (int n = blk.lo; n <= blk.hi; ++n) ASSERT_EQ(dybe::eval(blk.at(m, n), l), num.block(s).at(m, n));
}
