#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "pqvw/subalgebra.hpp"

using namespace pqvw;

namespace {

std::vector<IndexSet> found_sets(const SearchResult& r)
{
  std::vector<IndexSet> out;
  for (const auto& rep : r.found)
    out.push_back(rep.indices);
  return out;
}

TEST(IndexSet, SortsAndRejectsRepeats)
{
  IndexSet s{2, -1, 0};
  EXPECT_EQ(s.elements(), (std::vector<GenIndex>{-1, 0, 2}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.position(0), 1);
  EXPECT_EQ(s.position(5), -1);
  EXPECT_THROW((IndexSet{1, 1, 2}), AlgebraError);
  EXPECT_EQ(to_string(s), "{-1, 0, 2}");
}

TEST(Closure, Examples)
{
  EXPECT_TRUE(closure_check({-1, 0, 1}, 3).closed);
  EXPECT_TRUE(closure_check({-2, 2, 5}, 3).closed);

  auto r = closure_check({0, 1, 2}, 3);
  EXPECT_FALSE(r.closed);
  ASSERT_TRUE(r.closure_violation.has_value());
  EXPECT_EQ(*r.closure_violation, (IndexTuple{0, 1, 2}));
  EXPECT_EQ(r.coeff->to_string(), "q^-2 - p^2");
  EXPECT_EQ(r.target, 3);

  EXPECT_THROW(closure_check({0, 1}, 3), BadArity);
}

TEST(FiSpan, Examples)
{
  auto a = fi_check_span({-1, 0, 1}, 3);
  EXPECT_TRUE(a.closed);
  EXPECT_EQ(a.fi_pass, true);

  auto b = fi_check_span({-1, 0, 1, 2}, 3);
  EXPECT_FALSE(b.closed);
  EXPECT_FALSE(b.fi_pass.has_value());

  EXPECT_EQ(fi_check_span({-2, 2, 5}, 3).fi_pass, true);
}

TEST(FiSpan, ClosedFourSetFails)
{
  auto r = fi_check_span({-2, -1, 1, 2}, 3);
  EXPECT_TRUE(r.closed);
  EXPECT_EQ(r.fi_pass, false);
  ASSERT_TRUE(r.fi_violation.has_value());
  EXPECT_FALSE(r.fi_violation->residual.is_zero());
  EXPECT_EQ(fi_residual(3, r.fi_violation->y, r.fi_violation->x), r.fi_violation->residual);
}

TEST(Canonical, Basis)
{
  EXPECT_EQ(canonical_basis(3), (IndexSet{-1, 0, 1}));
  EXPECT_EQ(canonical_basis(4), (IndexSet{-1, 0, 1, 2}));
  EXPECT_EQ(canonical_basis(5), (IndexSet{-2, -1, 0, 1, 2}));
  EXPECT_EQ(canonical_basis(6), (IndexSet{-2, -1, 0, 1, 2, 3}));
  EXPECT_EQ(canonical_basis(4).sum(), 2);
  EXPECT_EQ(canonical_basis(5).sum(), 0);
  EXPECT_THROW(canonical_basis(2), BadArity);
}

TEST(Canonical, FrozenCoefficients)
{
  EXPECT_EQ(canonical_coeff(3).to_string(), "q^-2 - p^2");
  EXPECT_EQ(canonical_coeff(4).to_string(), "-p^-1*q^-4 + 2*p*q^-2 + p^2*q^-1 - p^3 - 2*p^4*q + p^6*q^3");
  EXPECT_EQ(canonical_coeff(5).to_string(),
            "p^-6*q^-10 - 3*p^-4*q^-8 - 2*p^-3*q^-7 + 2*p^-2*q^-6 + 6*p^-1*q^-5 + 3*q^-4 - 4*p*q^-3 - "
            "6*p^2*q^-2 - 4*p^3*q^-1 + 3*p^4 + 6*p^5*q + 2*p^6*q^2 - 2*p^7*q^3 - 3*p^8*q^4 + p^10*q^6");
}

TEST(Canonical, ThreeSurvivesTheLimit)
{
  // -(q - 1)(q + 1)(q^2 + 1) / q^2
  UniScalar u = specialize_pq(canonical_coeff(3));
  EXPECT_FALSE(u.is_zero());
  EXPECT_EQ(u.to_string(), "q^-2 - q^2");
}

TEST(Canonical, IsSubalgebraIsomorphicToTheModel)
{
  for (int n = 3; n <= 5; ++n) {
    IndexSet s = canonical_basis(n);
    auto rep = analyze(s, n);
    EXPECT_TRUE(rep.closed) << n;
    EXPECT_EQ(rep.fi_pass, true) << n;
    EXPECT_EQ(rep.iso_canonical, true) << n;
    EXPECT_EQ(rep.ideal_at, n % 2 ? 0 : n / 2) << n;
    EXPECT_FALSE(rep.coeff->is_zero()) << n;
  }
}

TEST(Iso, Examples)
{
  auto a = iso_canonical_check({-1, 0, 1}, 3);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.target, 0);
  auto b = iso_canonical_check({-2, 2, 5}, 3);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.target, 5);
  EXPECT_FALSE(iso_canonical_check({0, 1, 2}, 3).pass);
}

TEST(Ideal, Examples)
{
  EXPECT_TRUE(ideal_check({-1, 0, 1}, 3, 0));
  EXPECT_TRUE(ideal_check({-2, 2, 5}, 3, 5));
  EXPECT_FALSE(ideal_check({-1, 0, 1}, 3, 1));
  EXPECT_FALSE(ideal_check({-1, 0, 1}, 3, 7));
}

TEST(FilippovMatrix, CanonicalPlusOneIsAsymmetric)
{
  auto m = filippov_matrix({-1, 0, 1, 2}, 3);
  EXPECT_FALSE(m.symmetric);
  // Each column holds at most one nonzero entry.
  for (int c = 0; c < 4; ++c) {
    int nonzero = 0;
    for (int r = 0; r < 4; ++r)
      nonzero += !m.entries[r][c].is_zero();
    EXPECT_LE(nonzero, 1);
  }
}

TEST(FilippovMatrix, AllOutputsOutsideGiveZeroMatrix)
{
  auto m = filippov_matrix({10, 11, 12, 13}, 3);
  EXPECT_TRUE(m.symmetric);
  for (const auto& row : m.entries)
    for (const auto& e : row)
      EXPECT_TRUE(e.is_zero());
}

TEST(FilippovMatrix, ColumnSigns)
{
  // S = {-3, -1, 1, 3}: L^1 = (-1)^5 [-1, 1, 3] lands in row 3, L^4 = (-1)^8 [-3, -1, 1] in row 0.
  IndexSet s{-3, -1, 1, 3};
  auto m = filippov_matrix(s, 3);
  EXPECT_EQ(m.entries[3][0], -bracket({-1, 1, 3}).coeff);
  EXPECT_EQ(m.entries[0][3], bracket({-3, -1, 1}).coeff);
  EXPECT_EQ(m.entries[2][1], bracket({-3, 1, 3}).coeff);
}

TEST(Search, ThreeInWindowTwo)
{
  auto r = search(2, 3, 4);
  EXPECT_EQ(r.candidates, 10u);
  EXPECT_EQ(r.larger_candidates, 5u);
  EXPECT_TRUE(r.bound_holds());
  const std::vector<IndexSet> expected = {{-2, -1, 1}, {-2, -1, 2}, {-2, 0, 2},
                                          {-2, 1, 2},  {-1, 0, 1},  {-1, 1, 2}};
  EXPECT_EQ(found_sets(r), expected);
}

TEST(Search, ThreeInWindowThree)
{
  auto r = search(3, 3, 4);
  EXPECT_TRUE(r.bound_holds());
  const std::vector<IndexSet> expected = {
      {-3, -2, 2}, {-3, -2, 3}, {-3, -1, 1}, {-3, -1, 3}, {-3, 0, 3},
      {-3, 1, 3},  {-3, 2, 3},  {-2, -1, 1}, {-2, -1, 2}, {-2, 0, 2},
      {-2, 1, 2},  {-2, 2, 3},  {-1, 0, 1},  {-1, 1, 2},  {-1, 1, 3}};
  EXPECT_EQ(found_sets(r), expected);

  const std::vector<IndexSet> closed4 = {{-3, -2, 2, 3}, {-3, -1, 1, 3}, {-2, -1, 1, 2}};
  std::vector<IndexSet> got;
  for (const auto& c : r.closed_larger)
    got.push_back(c.indices);
  EXPECT_EQ(got, closed4);
}

TEST(Search, FourFindsCanonical)
{
  auto r = search(2, 4, 4);
  auto sets = found_sets(r);
  EXPECT_NE(std::find(sets.begin(), sets.end(), canonical_basis(4)), sets.end());
}

TEST(Search, MatrixCriterionAgreesWithFi)
{
  for (int w : {2, 3}) {
    auto r = search(w, 3, 4);
    for (const auto& c : r.closed_larger) {
      ASSERT_TRUE(c.symmetric.has_value());
      EXPECT_EQ(*c.symmetric, c.fi_pass.value()) << to_string(c.indices);
    }
  }
}

TEST(Search, CharacterizationAndIdeal)
{
  auto r = search(3, 3, 3);
  for (const auto& s : index_sets(3, 3)) {
    auto c = closure_check(s, 3);
    bool expect = s.contains(s.sum()) || c.coeff->is_zero();
    EXPECT_EQ(c.closed, expect) << to_string(s);
  }
  for (const auto& rep : r.found) {
    EXPECT_EQ(rep.iso_canonical, true);
    EXPECT_EQ(rep.ideal_at, rep.indices.sum());
  }
}

TEST(Search, IndependentOfWorkerCount)
{
  auto a = search(3, 3, 4, 1);
  auto b = search(3, 3, 4, 3);
  EXPECT_EQ(found_sets(a), found_sets(b));
  ASSERT_EQ(a.closed_larger.size(), b.closed_larger.size());
  for (std::size_t i = 0; i < a.closed_larger.size(); ++i)
    EXPECT_EQ(a.closed_larger[i].indices, b.closed_larger[i].indices);
}

TEST(Parallel, PreservesOrderAndPropagatesErrors)
{
  std::vector<int> jobs(100);
  std::iota(jobs.begin(), jobs.end(), 0);
  auto sq = parallel_map(jobs, [](int x) { return x * x; }, 4);
  for (int i = 0; i < 100; ++i)
    EXPECT_EQ(sq[i], i * i);
  EXPECT_THROW(parallel_map(
                   jobs,
                   [](int x) {
                     if (x == 37)
                       throw AlgebraError("boom");
                     return x;
                   },
                   4),
               AlgebraError);
}

} // namespace
