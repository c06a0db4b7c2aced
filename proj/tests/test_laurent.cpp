#include <gtest/gtest.h>

#include "pqvw/ring.hpp"
#include "support.hpp"

using namespace pqvw;
using pqvw::testing::Generator;
using pqvw::testing::p_var;
using pqvw::testing::q_var;

namespace {

const LPoly D = q_var() - p_var(-1);

TEST(Laurent, AddCancels)
{
  EXPECT_EQ(D + p_var(-1), q_var());
}

TEST(Laurent, DifferenceOfSquares)
{
  EXPECT_EQ(D * (q_var() + p_var(-1)), q_var(2) - p_var(-2));
}

TEST(Laurent, Power)
{
  EXPECT_EQ(pq_monomial(1, -1).pow(3), pq_monomial(3, -3));
  EXPECT_EQ(D.pow(0), LPoly(1L));
}

TEST(Laurent, ExactDivision)
{
  EXPECT_EQ(lp_exact_div(q_var(2) - p_var(-2), D), q_var() + p_var(-1));
  LPoly a = q_var(3) - pq_monomial(2, 0, Rat(1, 2));
  EXPECT_EQ(lp_exact_div(a, LPoly(1L)), a);
  EXPECT_THROW(lp_exact_div(p_var(), D), NotDivisible);
}

TEST(Laurent, ZeroHasNoTerms)
{
  LPoly z = D - D;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.size(), 0u);
  EXPECT_EQ(z.to_string(PQRing::names), "0");
}

TEST(Laurent, CanonicalText)
{
  LPoly a = pq_monomial(2, -1, Rat(3, 2)) - q_var() + LPoly(Rat(-1, 3));
  EXPECT_EQ(a.to_string(PQRing::names), "-1/3 - q + 3/2*p^2*q^-1");
  EXPECT_EQ(D.to_string(PQRing::names), "-p^-1 + q");
}

TEST(LaurentProperty, RingAxioms)
{
  Generator gen(0x5eed);
  for (int i = 0; i < 1000; ++i) {
    LPoly a = gen.lpoly(), b = gen.lpoly(), c = gen.lpoly();
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(LaurentProperty, DivisionInvertsMultiplication)
{
  Generator gen(17);
  for (int i = 0; i < 1000; ++i) {
    LPoly a = gen.lpoly(), d = gen.nonzero_lpoly();
    ASSERT_EQ(lp_exact_div(a * d, d), a);
  }
}

TEST(LaurentProperty, FourVariableDivision)
{
  Generator gen(99);
  for (int i = 0; i < 300; ++i) {
    auto a = gen.laurent<4>(4, 2), d = gen.laurent<4>(3, 2);
    if (d.is_zero())
      continue;
    ASSERT_EQ((a * d).exact_div(d), a);
  }
}

TEST(LaurentProperty, NonDivisibleDetected)
{
  // p + 2 and q - p^-1 are coprime, so no multiple of one is a multiple of the other
  // unless the cofactor absorbs it.
  Generator gen(5);
  for (int i = 0; i < 200; ++i) {
    LPoly a = gen.nonzero_lpoly();
    LPoly num = a * (p_var() + LPoly(2L));
    if (PQRing::may_divide(num))
      continue;
    ASSERT_FALSE(num.try_divide(D).has_value());
  }
}

} // namespace
