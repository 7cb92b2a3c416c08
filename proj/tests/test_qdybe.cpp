#include <gtest/gtest.h>

#include "dybe/qdybe.hpp"
#include "support.hpp"

using dybe::Rat;
using dybe::RatQ;
using dybe::testing::lam;
namespace qd = dybe::qdybe;

TEST(Qdybe, TrivialFactor) {
  EXPECT_TRUE(qd::qdybe_check<RatQ>({0, 1, 2}, lam()));
  EXPECT_TRUE(qd::qdybe_check<RatQ>({2, 0, 1}, lam()));
}

TEST(Qdybe, FundamentalTriple) {
  auto sides = qd::qdybe_sides<RatQ>({1, 1, 1}, lam());
  EXPECT_EQ(sides.lhs.dimension(), 8);
  EXPECT_EQ(sides.lhs, sides.rhs);
}

TEST(Qdybe, MixedDimensions) { EXPECT_TRUE(qd::qdybe_check<RatQ>({1, 1, 2}, lam())); }

TEST(Qdybe, OppositeShiftSignFails) {
  EXPECT_FALSE(qd::qdybe_sides<RatQ>({1, 1, 1}, lam(), +1).lhs == qd::qdybe_sides<RatQ>({1, 1, 1}, lam(), +1).rhs);
}

TEST(Qdybe, AllDimensionsUpToTwo) {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c) ASSERT_TRUE(qd::qdybe_check<RatQ>({a, b, c}, lam())) << a << b << c;
}

TEST(Qdybe, RationalLambda) { EXPECT_TRUE(qd::qdybe_check<Rat>({2, 1, 2}, Rat(3, 11))); }
