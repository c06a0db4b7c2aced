#include <random>

#include <gtest/gtest.h>

#include "pqvw/identities.hpp"
#include "support.hpp"

using namespace pqvw;
using pqvw::testing::Generator;

namespace {

long binomial(int n, int k)
{
  long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

TEST(Shuffles, Counts)
{
  EXPECT_EQ(shuffles(2).size(), 3u);
  EXPECT_EQ(shuffles(3).size(), 10u);
  EXPECT_EQ(shuffles(4).size(), 35u);
  EXPECT_THROW(shuffles(1), BadArity);
}

TEST(Shuffles, RunsAscendAndParityMatchesLeviCivita)
{
  for (int n = 2; n <= 6; ++n) {
    auto all = shuffles(n);
    ASSERT_EQ(static_cast<long>(all.size()), binomial(2 * n - 1, n));
    for (const auto& s : all) {
      ASSERT_TRUE(std::is_sorted(s.sigma.begin(), s.sigma.begin() + n));
      ASSERT_TRUE(std::is_sorted(s.sigma.begin() + n, s.sigma.end()));
      ASSERT_EQ(s.parity, levi_civita(s.sigma));
    }
  }
}

TEST(Shuffles, ThreeBracketPattern)
{
  // The signed ten-term expansion of the sh-Jacobi identity at n = 3.
  const std::vector<std::pair<std::vector<int>, int>> expected = {
      {{1, 2, 3, 4, 5}, 1},  {{1, 2, 4, 3, 5}, -1}, {{1, 2, 5, 3, 4}, 1},  {{1, 3, 4, 2, 5}, 1},
      {{1, 3, 5, 2, 4}, -1}, {{1, 4, 5, 2, 3}, 1},  {{2, 3, 4, 1, 5}, -1}, {{2, 3, 5, 1, 4}, 1},
      {{2, 4, 5, 1, 3}, -1}, {{3, 4, 5, 1, 2}, 1}};
  auto all = shuffles(3);
  ASSERT_EQ(all.size(), expected.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].sigma, expected[i].first) << i;
    EXPECT_EQ(all[i].parity, expected[i].second) << i;
  }
}

TEST(LeviCivita, Values)
{
  std::vector<int> a{1, 2, 3}, b{2, 1, 3}, c{1, 1, 2};
  EXPECT_EQ(levi_civita(a), 1);
  EXPECT_EQ(levi_civita(b), -1);
  EXPECT_EQ(levi_civita(c), 0);
}

TEST(Skew, Examples)
{
  IndexTuple a{0, 1, 2};
  EXPECT_TRUE(check_skew(a, 3).pass());
  IndexTuple b{0, 0, 1, 2};
  IdentityReport rb = check_skew(b, 4);
  EXPECT_TRUE(rb.pass());
  EXPECT_TRUE(rb.residual_zero);
  Generator gen(9);
  for (int i = 0; i < 10; ++i) {
    IndexTuple t(5);
    for (auto& x : t)
      x = gen.uniform(-2, 2);
    EXPECT_TRUE(check_skew(t, 5).pass());
  }
  IndexTuple two{3, -1};
  EXPECT_TRUE(check_skew(two, 2).pass());
}

TEST(ShJacobi, Examples)
{
  IndexTuple a{0, 1, 2, 3, 4};
  EXPECT_TRUE(sh_jacobi_residual(3, a).is_zero());
  IndexTuple b{0, 1, 1, 2, -1};
  EXPECT_TRUE(sh_jacobi_residual(3, b).is_zero());
  IndexTuple c{-2, -1, 0, 1, 2, 3, 4};
  EXPECT_TRUE(sh_jacobi_residual(4, c).is_zero());
  EXPECT_THROW(sh_jacobi_residual(3, std::vector<int>{0, 1}), BadArity);
}

TEST(ShJacobi, RandomTuples)
{
  Generator gen(44);
  for (int n = 3; n <= 5; ++n)
    for (int i = 0; i < 20; ++i) {
      IndexTuple t(2 * n - 1);
      for (auto& x : t)
        x = gen.uniform(-3, 3);
      ASSERT_TRUE(sh_jacobi_residual(n, t).is_zero()) << n;
    }
}

TEST(ShJacobi, UnsignedSumDoesNotVanish)
{
  // The identity depends on the shuffle parities: dropping them breaks it.
  IndexTuple t{-2, -1, 0, 1, 2};
  Scalar unsigned_sum;
  for (const auto& sh : cached_shuffles(3)) {
    IndexTuple inner{t[sh.sigma[0] - 1], t[sh.sigma[1] - 1], t[sh.sigma[2] - 1]};
    Term in = bracket(inner);
    Term out = bracket({in.index, t[sh.sigma[3] - 1], t[sh.sigma[4] - 1]});
    unsigned_sum += in.coeff * out.coeff;
  }
  EXPECT_FALSE(unsigned_sum.is_zero());
  EXPECT_TRUE(sh_jacobi_residual(3, t).is_zero());
}

TEST(ShJacobi, FormalSumsAgree)
{
  Generator gen(45);
  for (int i = 0; i < 5; ++i) {
    std::vector<OpSum> args;
    for (int k = 0; k < 5; ++k)
      args.push_back(OpSum(gen.uniform(-2, 2)) + OpSum(gen.uniform(-2, 2)) * scalar_monomial(gen.uniform(-1, 1), 1));
    EXPECT_TRUE(sh_jacobi_residual(args).is_zero());
  }
  IndexTuple t{0, 1, 2, 3, 4};
  std::vector<OpSum> gens(t.begin(), t.end());
  EXPECT_TRUE(sh_jacobi_residual(gens).is_zero());
}

TEST(Fi, TrivialWhenYRepeatsX)
{
  // Y = (X_1, X_2): both sides reduce to [X_1, X_2, [X_1, X_2, X_3]].
  IndexTuple y{0, 1}, x{0, 1, 2};
  EXPECT_TRUE(fi_residual(3, y, x).is_zero());
}

TEST(Fi, ThreeBracketFails)
{
  IndexTuple y{-2, -1}, x{-2, 0, 1};
  Term r = fi_residual(3, y, x);
  EXPECT_FALSE(r.is_zero());
  EXPECT_EQ(r.index, -4);

  std::vector<OpSum> ys(y.begin(), y.end()), xs(x.begin(), x.end());
  EXPECT_EQ(fi_residual(ys, xs), OpSum(r));
}

TEST(Fi, TwoBracketIsPlainJacobi)
{
  IndexTuple y{0}, x{1, 2};
  Term r = fi_residual(2, y, x);
  Scalar direct = bracket2(1, 2).coeff * bracket2(0, 3).coeff - bracket2(0, 1).coeff * bracket2(1, 2).coeff -
                  bracket2(0, 2).coeff * bracket2(1, 2).coeff;
  EXPECT_EQ(r.coeff, direct);
  EXPECT_FALSE(r.is_zero());
}

TEST(Fi, EvenCounterexample)
{
  FiCounterexample four = fi_counterexample_even(4);
  EXPECT_EQ(four.y, (IndexTuple{-2, -3, 6}));
  EXPECT_EQ(four.x, (IndexTuple{0, 1, 2, 3}));
  EXPECT_FALSE(four.residual.is_zero());
  EXPECT_EQ(four.residual.index, index_sum(four.y) + index_sum(four.x));

  FiCounterexample six = fi_counterexample_even(6);
  EXPECT_EQ(six.y, (IndexTuple{-2, -3, -4, -5, 15}));
  EXPECT_FALSE(six.residual.is_zero());

  EXPECT_THROW(fi_counterexample_even(5), BadArity);
}

TEST(Fi, SearchFindsThreeBracketViolation)
{
  auto v = find_fi_violation(3, 2);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->y, (IndexTuple{-2, -1}));
  EXPECT_EQ(v->x, (IndexTuple{-2, 0, 1}));
  EXPECT_FALSE(v->residual.is_zero());
  EXPECT_EQ(fi_residual(3, v->y, v->x), v->residual);
}

TEST(Jacobi2, DeformedHolds)
{
  EXPECT_TRUE(deformed_jacobi2_residual(0, 1, 2).is_zero());
  EXPECT_TRUE(deformed_jacobi2_residual(1, 1, -2).is_zero());
  EXPECT_TRUE(deformed_jacobi2_residual(-1, 2, 3).is_zero());
}

TEST(Jacobi2, UnweightedFails)
{
  // Without (q^m + p^-m) the cyclic sum does not vanish.
  Scalar r;
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& c : cyc)
    r += bracket2(c[1], c[2]).coeff * bracket2(c[0], c[1] + c[2]).coeff;
  EXPECT_FALSE(r.is_zero());
}

TEST(Jacobi2, QDeformedHolds)
{
  EXPECT_TRUE(q_jacobi2_residual(0, 1, 2).is_zero());
  EXPECT_TRUE(q_jacobi2_residual(1, 2, 3).is_zero());
  EXPECT_TRUE(q_jacobi2_residual(-2, 0, 3).is_zero());
}

TEST(Jacobi2, ClassicalHolds)
{
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n)
      for (int k = -2; k <= 2; ++k)
        ASSERT_EQ(classical_jacobi_residual(m, n, k), Rat(0));
}

} // namespace
