#include <gtest/gtest.h>

#include "dybe/fusion.hpp"
#include "dybe/universal.hpp"
#include "support.hpp"

using dybe::Rat;
using dybe::RatQ;
using dybe::RatQQ;
using dybe::testing::lam;
using dybe::testing::lam_plus;
namespace un = dybe::universal;

namespace {

RatQQ x_plus(long c) { return un::lambda_const() - un::h_var() + un::constant(c); }

} // namespace

TEST(Universal, FusionCoefficients) {
  auto j = un::universal_J(2);
  EXPECT_EQ(j.terms[0], un::constant(1));
  EXPECT_EQ(j.terms[1], un::constant(-1) / x_plus(2));
  EXPECT_EQ(j.terms[2], un::constant(1) / (un::constant(2) * x_plus(3) * x_plus(4)));
}

TEST(Universal, InverseCoefficients) {
  auto j = un::universal_J_inv(2);
  EXPECT_EQ(j.terms[0], un::constant(1));
  EXPECT_EQ(j.terms[1], un::constant(1) / x_plus(2));
  EXPECT_EQ(j.terms[2], un::constant(1) / (un::constant(2) * x_plus(2) * x_plus(3)));
}

TEST(Universal, ProductIdentities) {
  EXPECT_TRUE(un::universal_product_check(0));
  EXPECT_TRUE(un::universal_product_check(4));
  EXPECT_TRUE(un::universal_product_check(10));
}

TEST(Universal, ProductDetectsWrongOrder) {
  // Dropping the h-shift from e^k past g(h) breaks the identity.
  auto j = un::universal_J(3);
  auto ji = un::universal_J_inv(3);
  RatQQ naive = j.terms[0] * ji.terms[1] + j.terms[1] * ji.terms[0];
  RatQQ n2 = j.terms[0] * ji.terms[2] + j.terms[1] * ji.terms[1] + j.terms[2] * ji.terms[0];
  EXPECT_FALSE(naive.is_zero() && n2.is_zero());
}

TEST(Universal, MatchesAssembledFusionMatrices) {
  for (int delta = 0; delta <= 4; ++delta)
    for (int gamma = 0; gamma <= 4; ++gamma) {
      int order = delta + gamma;
      ASSERT_EQ(un::apply_universal(un::universal_J(order), delta, gamma), dybe::fusion::assemble_J(delta, gamma, lam()));
      ASSERT_EQ(un::apply_universal(un::universal_J_inv(order), delta, gamma),
                dybe::fusion::assemble_J_inv(delta, gamma, lam()));
    }
  EXPECT_EQ(un::apply_universal(un::universal_J(1), 2, 1), dybe::fusion::assemble_J(2, 1, lam()));
  EXPECT_TRUE(un::apply_universal(un::universal_J(0), 0, 0).is_identity());
}

TEST(Universal, RationalSpecialization) {
  Rat l(7, 5);
  EXPECT_EQ(un::apply_universal(un::universal_J(3), 3, 2, l), dybe::fusion::assemble_J(3, 2, l));
}

TEST(Universal, TruncationBelowDepth) {
  EXPECT_THROW(un::apply_universal(un::universal_J(1), 2, 2), dybe::truncation_error);
}

TEST(Universal, QFromAntipodePipeline) {
  auto q = un::q_from_fusion(un::universal_J(4));
  auto target = un::universal_Q(4);
  ASSERT_EQ(q.terms.size(), target.terms.size());
  for (std::size_t n = 0; n < q.terms.size(); ++n) EXPECT_EQ(q.terms[n], target.terms[n]) << n;
}

TEST(Universal, QEigenvalueExamples) {
  EXPECT_EQ(un::q_operator_eigenvalue(3, 0, lam()), RatQ(1));
  EXPECT_EQ(un::q_operator_eigenvalue(2, 1, lam()), lam_plus(2) / lam());
  auto q = un::universal_Q(2);
  EXPECT_EQ(un::q_operator_eigenvalue_sum(2, 2, q), un::q_operator_eigenvalue(2, 2, lam()));
  EXPECT_EQ(un::q_operator_eigenvalue_sum(2, 2, q), lam_plus(3) / lam_plus(1));
  EXPECT_THROW(un::q_operator_eigenvalue(2, 1, Rat(0)), dybe::non_generic_lambda);
}

TEST(Universal, QClosedFormMatchesSum) {
  auto q = un::universal_Q(6);
  for (int gamma = 0; gamma <= 6; ++gamma)
    for (int k = 0; k <= gamma; ++k)
      ASSERT_EQ(un::q_operator_eigenvalue_sum(gamma, k, q), un::q_operator_eigenvalue(gamma, k, lam())) << gamma << k;
}

TEST(Universal, NormalOrdering) {
  // phi(h) e = e phi(h + 2)
  un::Word w{un::constant(1), {{un::Letter::Type::phi, 1, un::h_var()}, {un::Letter::Type::e, 1, {}}}};
  auto nt = un::normal_order(w);
  EXPECT_EQ(nt.e_power, 1);
  EXPECT_EQ(nt.phi, un::h_var() + un::constant(2));
  // f phi(h) = phi(h + 2) f
  un::Word w2{un::constant(1), {{un::Letter::Type::f, 1, {}}, {un::Letter::Type::phi, 1, un::h_var()}}};
  EXPECT_EQ(un::normal_order(w2).phi, un::h_var() + un::constant(2));
}
