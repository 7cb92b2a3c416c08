#include <gtest/gtest.h>

#include <random>

#include "dybe/ratfield.hpp"
#include "support.hpp"

using dybe::Poly;
using dybe::Rat;
using dybe::RatQ;
using dybe::RatQQ;
using dybe::Var;
using dybe::testing::lam;
using dybe::testing::lam_plus;

TEST(RatField, ArithmeticExamples) {
  EXPECT_TRUE((RatQ(1) / lam_plus(1) + RatQ(-1) / lam_plus(1)).is_zero());
  RatQ r(lam() * lam() - RatQ(1));
  r = r / lam_plus(1);
  EXPECT_EQ(r, lam_plus(-1));
  EXPECT_EQ(r.den().degree(), 0);
  EXPECT_EQ(RatQ(1) / lam_plus(1) * (lam_plus(1) / lam()), RatQ(1) / lam());
}

TEST(RatField, DivisionByZeroThrows) {
  EXPECT_THROW(lam() / RatQ(0), dybe::zero_denominator);
  EXPECT_THROW(RatQ(0).inverse(), dybe::zero_denominator);
}

TEST(RatField, DenominatorIsMonic) {
  RatQ r = RatQ(3) / (RatQ(2) * lam() + RatQ(4));
  EXPECT_EQ(r.den().lead(), Rat(1));
  EXPECT_EQ(r.num().coeff(0), Rat(3, 2));
}

TEST(RatField, VariableMismatchThrows) {
  auto mu = RatQ::variable(Var::mu);
  EXPECT_THROW(lam() + mu, dybe::variable_mismatch);
  EXPECT_NO_THROW(lam() + RatQ(3));
}

TEST(RatField, ShiftExamples) {
  EXPECT_EQ(dybe::shift(RatQ(1) / lam(), Rat(2)), RatQ(1) / lam_plus(2));
  EXPECT_EQ(dybe::shift(lam() * lam(), Rat(-1)), lam() * lam() - RatQ(2) * lam() + RatQ(1));
  EXPECT_EQ(dybe::shift(lam() / lam_plus(1), Rat(1)), lam_plus(1) / lam_plus(2));
}

TEST(RatField, EvalExamples) {
  EXPECT_EQ(dybe::eval(RatQ(1) / lam_plus(1), Rat(1)), Rat(1, 2));
  EXPECT_EQ(dybe::eval(lam() * lam() - RatQ(1), Rat(-1)), Rat(0));
  EXPECT_EQ(dybe::eval(lam_plus(-1) / lam_plus(2), Rat(3)), Rat(2, 5));
  EXPECT_THROW(dybe::eval(RatQ(1) / lam_plus(1), Rat(-1)), dybe::evaluation_at_pole);
}

TEST(RatField, Rendering) {
  EXPECT_EQ(dybe::to_string(RatQ(-2) / lam_plus(2)), "(-2)/(lambda + 2)");
  EXPECT_EQ(dybe::to_string(lam() * lam() - RatQ(1)), "(lambda^2 - 1)/(1)");
  EXPECT_EQ(dybe::to_string(RatQ(0)), "(0)/(1)");
  EXPECT_EQ(dybe::to_string(RatQ(Rat(1, 2)) * lam()), "(1/2*lambda)/(1)");
}

TEST(RatField, ParseRoundTrip) {
  std::mt19937 g(11);
  for (int i = 0; i < 50; ++i) {
    RatQ f = dybe::testing::random_ratfunc(g);
    auto s = dybe::to_string(f);
    EXPECT_EQ(dybe::parse_ratfunc<Rat>(s, {Var::lambda}), f) << s;
  }
}

TEST(RatField, TowerParseRoundTrip) {
  auto mu = RatQ::variable(Var::mu);
  RatQQ u = RatQQ::variable(Var::u);
  RatQQ f = (RatQQ(mu) * u * u - RatQQ(RatQ(1) / (mu + RatQ(1)))) / (u + RatQQ(mu));
  auto s = dybe::to_string(f);
  EXPECT_EQ(dybe::parse_ratfunc<RatQ>(s, {Var::u, Var::mu}), f) << s;
}

TEST(RatField, EvalIsHomomorphism) {
  std::mt19937 g(3);
  for (int i = 0; i < 100; ++i) {
    RatQ a = dybe::testing::random_ratfunc(g);
    RatQ b = dybe::testing::random_ratfunc(g);
    if (b.is_zero()) continue;
    Rat x = dybe::testing::regular_point(g, a, b, a + b, a * b);
    ASSERT_EQ(dybe::eval(a + b, x), dybe::eval(a, x) + dybe::eval(b, x));
    ASSERT_EQ(dybe::eval(a * b, x), dybe::eval(a, x) * dybe::eval(b, x));
  }
}

TEST(RatField, ShiftInverse) {
  std::mt19937 g(5);
  for (int i = 0; i < 100; ++i) {
    RatQ f = dybe::testing::random_ratfunc(g);
    Rat a = dybe::testing::random_rat(g);
    ASSERT_EQ(dybe::shift(dybe::shift(f, a), -a), f);
  }
}

TEST(RatField, StructuralEqualityMatchesCrossMultiplication) {
  std::mt19937 g(9);
  for (int i = 0; i < 100; ++i) {
    RatQ a = dybe::testing::random_ratfunc(g);
    RatQ b = (i % 2 == 0) ? dybe::testing::random_ratfunc(g) : a * lam_plus(i) / lam_plus(i);
    bool cross = (a.num() * b.den() - b.num() * a.den()).is_zero();
    ASSERT_EQ(a == b, cross);
  }
}

TEST(RatField, FieldAxiomsOverTower) {
  std::mt19937 g(21);
  auto u = RatQQ::variable(Var::u);
  for (int i = 0; i < 20; ++i) {
    RatQ c1 = dybe::testing::random_ratfunc(g, 2, Var::mu);
    RatQ c2 = dybe::testing::random_ratfunc(g, 2, Var::mu);
    if (c1.is_zero() || c2.is_zero()) continue;
    RatQQ a = (u + RatQQ(c1)) / (u * u - RatQQ(c2));
    RatQQ b = RatQQ(c2) * u;
    ASSERT_EQ((a + b) * a, a * a + b * a);
    ASSERT_EQ(a / a, RatQQ(1));
    ASSERT_EQ((a - b) + b, a);
  }
}

TEST(RatField, TowerDepthIsLimitedToTwo) {
  static_assert(dybe::valid_coefficient_v<Rat>);
  static_assert(dybe::valid_coefficient_v<RatQ>);
  static_assert(!dybe::valid_coefficient_v<RatQQ>);
  SUCCEED();
}

TEST(RatField, ExpansionAtInfinity) {
  // 1/(x - 1) = x^-1 + x^-2 + ...
  auto t = dybe::expand_at_infinity(RatQ(1) / lam_plus(-1), 5);
  EXPECT_EQ(t.top, -1);
  for (int e = -1; e >= -5; --e) EXPECT_EQ(t.coeff(e), Rat(1));
  EXPECT_EQ(t.coeff(2), Rat(0));
}
