#include <gtest/gtest.h>

#include "dybe/intertwine.hpp"
#include "support.hpp"

using dybe::Rat;
using dybe::RatQ;
using dybe::testing::lam;
using dybe::testing::lam_plus;
namespace tw = dybe::intertwine;

TEST(Intertwine, ClosedFormExamples) {
  for (int gamma = 0; gamma <= 3; ++gamma)
    for (int k = 0; k <= gamma; ++k) EXPECT_EQ(tw::coeff_closed(0, 0, lam(), gamma, k), RatQ(1));
  EXPECT_EQ(tw::coeff_closed(1, 0, lam(), 2, 0), RatQ(2) / (-lam() - RatQ(2)));
  EXPECT_EQ(tw::coeff_closed(0, 1, lam(), 2, 1), RatQ(1));
}

TEST(Intertwine, OutOfRangeIsZero) {
  EXPECT_TRUE(tw::coeff_closed(0, 2, lam(), 2, 1).is_zero());
  EXPECT_TRUE(tw::coeff_closed(4, 1, lam(), 2, 1).is_zero());
  EXPECT_TRUE(tw::coeff_oracle(4, 1, lam(), 2, 1).is_zero());
}

TEST(Intertwine, Specials) {
  auto sp = tw::coeff_specials(lam(), 2, 0);
  EXPECT_EQ(sp.row.at(0), RatQ(1));
  EXPECT_EQ(sp.row.at(2), RatQ(1) / ((-lam() - RatQ(2)) * (-lam() - RatQ(1))));
  EXPECT_EQ(tw::coeff_specials(lam(), 2, 2).column.at(2), RatQ(2));
  EXPECT_EQ(tw::coeff_specials(lam(), 2, 2).column.at(0), RatQ(1));
  for (int gamma = 0; gamma <= 5; ++gamma)
    for (int k = 0; k <= gamma; ++k) {
      auto s = tw::coeff_specials(lam(), gamma, k);
      for (int m = 0; m <= gamma - k; ++m) ASSERT_EQ(s.row.at(m), tw::coeff_closed(m, 0, lam(), gamma, k));
      for (int n = 0; n <= k; ++n) ASSERT_EQ(s.column.at(n), tw::coeff_closed(0, n, lam(), gamma, k));
    }
}

TEST(Intertwine, OracleExamples) {
  EXPECT_EQ(tw::coeff_oracle(0, 0, lam(), 3, 1), RatQ(1));
  auto closed = tw::build_table(lam(), 2, 1, 3);
  auto oracle = tw::build_table(lam(), 2, 1, 3, tw::Method::oracle);
  EXPECT_EQ(closed.table, oracle.table);
  Rat l(7, 3);
  auto closed_q = tw::build_table(l, 4, 2, 6);
  auto oracle_q = tw::build_table(l, 4, 2, 6, tw::Method::oracle);
  EXPECT_EQ(closed_q.table, oracle_q.table);
}

TEST(Intertwine, ClosedFormMatchesOracle) {
  for (int gamma = 0; gamma <= 5; ++gamma)
    for (int k = 0; k <= gamma; ++k) {
      auto closed = tw::build_table(lam(), gamma, k, gamma + 2);
      auto oracle = tw::build_table(lam(), gamma, k, gamma + 2, tw::Method::oracle);
      ASSERT_EQ(closed.table, oracle.table) << gamma << " " << k;
    }
}

TEST(Intertwine, BothClosedFormsAgreeOnDiagonal) {
  for (int gamma = 0; gamma <= 5; ++gamma)
    for (int k = 0; k <= gamma; ++k)
      for (int n = 0; n <= gamma + 2; ++n)
        ASSERT_EQ(tw::coeff_m_le_n(n, n, lam(), gamma, k), tw::coeff_m_ge_n(n, n, lam(), gamma, k));
}

TEST(Intertwine, HighestVectorRecurrence) {
  for (int gamma = 0; gamma <= 5; ++gamma)
    for (int k = 0; k <= gamma; ++k) {
      auto t = tw::build_table(lam(), gamma, k, 0);
      const long beta = dybe::sl2::weight(gamma, k);
      // c_{m,0} is a_m (-1)^m (-gamma+k)_m, the e^m v factor absorbed.
      for (int m = 1; m <= gamma - k; ++m) {
        RatQ am = t.at(m, 0) / (RatQ(dybe::sign_power(m)) * dybe::pochhammer(RatQ(-gamma + k), m));
        RatQ am1 = t.at(m - 1, 0) / (RatQ(dybe::sign_power(m - 1)) * dybe::pochhammer(RatQ(-gamma + k), m - 1));
        ASSERT_EQ(am * RatQ(m) * (RatQ(m - 1 + beta) - lam()), am1);
      }
      ASSERT_TRUE(tw::e_annihilates(t));
    }
}

TEST(Intertwine, NonGenericLambda) {
  // gamma = 2, k = 0: the denominator (-lambda-2)_m vanishes at lambda = -2 and -3.
  EXPECT_THROW(tw::coeff_closed(1, 0, Rat(-2), 2, 0), dybe::non_generic_lambda);
  EXPECT_THROW(tw::coeff_oracle(1, 0, Rat(-2), 2, 0), dybe::non_generic_lambda);
  EXPECT_NO_THROW(tw::coeff_closed(1, 0, Rat(1, 2), 2, 0));
}

TEST(Intertwine, RationalSpecializationMatchesSymbolic) {
  Rat l(5, 11);
  for (int gamma = 0; gamma <= 4; ++gamma)
    for (int k = 0; k <= gamma; ++k)
      for (int n = 0; n <= gamma + 1; ++n)
        for (int m = std::max(0, n - k); m <= n + gamma - k; ++m)
          ASSERT_EQ(dybe::eval(tw::coeff_closed(m, n, lam(), gamma, k), l), tw::coeff_closed(m, n, l, gamma, k));
}
