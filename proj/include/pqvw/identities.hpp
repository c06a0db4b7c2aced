#pragma once

// Verifiers for the identities an n-ary bracket may satisfy: skew-symmetry, the
// sh-Jacobi identity over (n, n-1) shuffles, the Filippov fundamental identity,
// and the deformed Jacobi identities of the 2-bracket.
//
// Every bracket of generators collapses to a single Term, so the generator
// versions work with structure constants directly. The OpSum overloads run the
// same identities through bracket_multilinear.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqvw/algebra.hpp"
#include "pqvw/errors.hpp"
#include "pqvw/oracle.hpp"
#include "pqvw/ring.hpp"

namespace pqvw {

/// Permutation sigma of {1, ..., 2n-1} increasing on its first n and last
/// n-1 positions.
struct Shuffle
{
  std::vector<int> sigma;
  int parity = 1;
};

/// Outcome of one identity check. verdict() compares the residual against the
/// expectation; expected-fail checks (FI counterexamples) pass on a nonzero
/// residual.
struct IdentityReport
{
  std::string identity;
  int n = 0;
  IndexTuple tuple;
  std::string residual = "0";
  bool residual_zero = true;
  bool expect_zero = true;

  bool pass() const { return residual_zero == expect_zero; }
};

/// 0 on repeated entries, otherwise the sign of the permutation sorting js.
inline int levi_civita(std::span<const int> js) { return sorting_sign(js); }

/// All C(2n-1, n) shuffles, ordered lexicographically by their first block.
inline std::vector<Shuffle> shuffles(int n)
{
  if (n < 2)
    throw BadArity("shuffles need n >= 2");
  const int total = 2 * n - 1;
  std::vector<Shuffle> out;
  std::vector<bool> pick(total, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    Shuffle s;
    for (int i = 0; i < total; ++i)
      if (pick[i])
        s.sigma.push_back(i + 1);
    for (int i = 0; i < total; ++i)
      if (!pick[i])
        s.sigma.push_back(i + 1);
    s.parity = levi_civita(s.sigma);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline const std::vector<Shuffle>& cached_shuffles(int n)
{
  static const std::vector<std::vector<Shuffle>> table = [] {
    std::vector<std::vector<Shuffle>> t(9);
    for (int k = 2; k < 9; ++k)
      t[k] = shuffles(k);
    return t;
  }();
  if (n >= 2 && n < static_cast<int>(table.size()))
    return table[n];
  throw BadArity("cached shuffles cover 2 <= n <= 8");
}

/// Compares every transposed tuple against the negated bracket; zero on repeats.
inline IdentityReport check_skew(std::span<const GenIndex> indices, int n)
{
  if (indices.size() != static_cast<std::size_t>(n))
    throw BadArity("check_skew needs n indices");
  IdentityReport rep{"skew", n, IndexTuple(indices.begin(), indices.end())};
  Term base = bracket(indices);
  auto fail = [&](const Scalar& r) {
    rep.residual = r.to_string();
    rep.residual_zero = false;
  };
  if (has_repeat(indices) && !base.is_zero()) {
    fail(base.coeff);
    return rep;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      IndexTuple t(indices.begin(), indices.end());
      std::swap(t[i], t[j]);
      Scalar r = bracket(t).coeff + base.coeff;
      if (!r.is_zero()) {
        fail(r);
        return rep;
      }
    }
  return rep;
}

/// sum over Sh(n, n-1) of parity * [[X_s(1..n)], X_s(n+1..2n-1)]; all terms
/// share the total index, so the residual is one Scalar.
inline Scalar sh_jacobi_residual(int n, std::span<const GenIndex> indices)
{
  if (indices.size() != static_cast<std::size_t>(2 * n - 1))
    throw BadArity("sh-Jacobi needs 2n-1 indices");
  Scalar residual;
  IndexTuple inner(n), outer(n);
  for (const auto& sh : cached_shuffles(n)) {
    for (int i = 0; i < n; ++i)
      inner[i] = indices[sh.sigma[i] - 1];
    Term in = bracket(inner);
    if (in.is_zero())
      continue;
    outer[0] = in.index;
    for (int i = 1; i < n; ++i)
      outer[i] = indices[sh.sigma[n + i - 1] - 1];
    Term out = bracket(outer);
    if (out.is_zero())
      continue;
    Scalar c = in.coeff * out.coeff;
    residual += sh.parity > 0 ? c : -c;
  }
  return residual;
}

/// sh-Jacobi residual for formal sums, through the multilinear bracket.
inline OpSum sh_jacobi_residual(std::span<const OpSum> args)
{
  const int n = static_cast<int>(args.size() + 1) / 2;
  if (args.size() != static_cast<std::size_t>(2 * n - 1))
    throw BadArity("sh-Jacobi needs 2n-1 arguments");
  OpSum residual;
  for (const auto& sh : cached_shuffles(n)) {
    std::vector<OpSum> inner, outer;
    for (int i = 0; i < n; ++i)
      inner.push_back(args[sh.sigma[i] - 1]);
    outer.push_back(bracket_multilinear(inner));
    for (int i = n; i < 2 * n - 1; ++i)
      outer.push_back(args[sh.sigma[i] - 1]);
    OpSum term = bracket_multilinear(outer);
    residual += sh.parity > 0 ? term : term * Scalar(-1L);
  }
  return residual;
}

/// [Y, [X]] - sum_k [X_1, ..., [Y, X_k], ..., X_n] for generators, where
/// [Y, Z] is the n-bracket (Y_1, ..., Y_{n-1}, Z).
inline Term fi_residual(int n, std::span<const GenIndex> y, std::span<const GenIndex> x)
{
  if (y.size() != static_cast<std::size_t>(n - 1) || x.size() != static_cast<std::size_t>(n))
    throw BadArity("FI needs n-1 and n indices");
  const GenIndex total = index_sum(y) + index_sum(x);
  IndexTuple outer(y.begin(), y.end());
  outer.push_back(0);
  auto with_last = [&](GenIndex z) {
    outer.back() = z;
    return bracket(outer);
  };

  Scalar residual;
  Term inner = bracket(x);
  if (!inner.is_zero()) {
    Term lhs = with_last(inner.index);
    if (!lhs.is_zero())
      residual += inner.coeff * lhs.coeff;
  }
  IndexTuple replaced(x.begin(), x.end());
  for (int k = 0; k < n; ++k) {
    Term yk = with_last(x[k]);
    if (yk.is_zero())
      continue;
    replaced[k] = yk.index;
    Term rhs = bracket(replaced);
    replaced[k] = x[k];
    if (!rhs.is_zero())
      residual -= yk.coeff * rhs.coeff;
  }
  return {residual, total};
}

/// FI residual for formal sums.
inline OpSum fi_residual(std::span<const OpSum> y, std::span<const OpSum> x)
{
  const std::size_t n = x.size();
  if (y.size() + 1 != n)
    throw BadArity("FI needs n-1 and n arguments");
  auto apply_y = [&](const OpSum& z) {
    std::vector<OpSum> a(y.begin(), y.end());
    a.push_back(z);
    return bracket_multilinear(a);
  };
  OpSum residual = apply_y(bracket_multilinear(x));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<OpSum> a(x.begin(), x.end());
    a[k] = apply_y(x[k]);
    residual = residual - bracket_multilinear(a);
  }
  return residual;
}

struct FiCounterexample
{
  IndexTuple y;
  IndexTuple x;
  Term residual;
};

/// Y_i = L_{-i-1} (i = 1..n-2), Y_{n-1} = L_{n(n-1)/2}, X_j = L_{j-1}. Throws
/// UnexpectedZero if the FI residual vanishes.
inline FiCounterexample fi_counterexample_even(int n)
{
  if (n < 4 || n % 2)
    throw BadArity("the FI counterexample is built for even n >= 4");
  FiCounterexample ce;
  for (int i = 1; i <= n - 2; ++i)
    ce.y.push_back(-i - 1);
  ce.y.push_back(n * (n - 1) / 2);
  for (int j = 1; j <= n; ++j)
    ce.x.push_back(j - 1);
  ce.residual = fi_residual(n, ce.y, ce.x);
  if (ce.residual.is_zero())
    throw UnexpectedZero("FI residual vanishes on the even-n construction, n = " + std::to_string(n));
  return ce;
}

/// First (Y, X) in [-window, window] (Y-major lexicographic order) with a
/// nonzero FI residual.
inline std::optional<FiCounterexample> find_fi_violation(int n, int window)
{
  IndexTuple y(n - 1, -window), x(n, -window);
  auto next = [window](IndexTuple& t) {
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      if (*it < window) {
        ++*it;
        return true;
      }
      *it = -window;
    }
    return false;
  };
  do {
    std::fill(x.begin(), x.end(), -window);
    do {
      Term r = fi_residual(n, y, x);
      if (!r.is_zero())
        return FiCounterexample{y, x, r};
    } while (next(x));
  } while (next(y));
  return std::nullopt;
}

/// (q^m + p^-m) [L_m, [L_n, L_k]] + cyclic, each bracket with its deformed weights.
inline Scalar deformed_jacobi2_residual(GenIndex m, GenIndex n, GenIndex k)
{
  const GenIndex cyc[3][3] = {{m, n, k}, {n, k, m}, {k, m, n}};
  Scalar residual;
  for (const auto& c : cyc) {
    Term inner = bracket2(c[1], c[2]);
    Term outer = bracket2(c[0], inner.index);
    Scalar weight = Scalar(pq_monomial(0, c[0]) + pq_monomial(-c[0], 0));
    residual += weight * inner.coeff * outer.coeff;
  }
  return residual;
}

/// The q-deformed Jacobi identity at p = q,
///   [L_m, [L_n, L_k]_{(q^{n-k}, q^{k-n})}]_{(q^{2m-(n+k)}, q^{(n+k)-2m})} + cyclic.
///
/// The outer weights are not the bracket's own weights, so the identity lives
/// in the operator algebra: it is evaluated on the symbolic Fock module and
/// the residual is the coefficient of |nu + m + n + k> at p = q, P = Q.
inline LevelUniScalar q_jacobi2_residual(GenIndex m, GenIndex n, GenIndex k)
{
  const GenIndex cyc[3][3] = {{m, n, k}, {n, k, m}, {k, m, n}};
  WordSum ws;
  for (const auto& c : cyc) {
    // The (p,q) 2-bracket specializes to [L_n, L_k]_q = [n - k]_q L_{n+k}.
    Term inner = bracket2(c[1], c[2]);
    const GenIndex j = inner.index;
    ws.add({c[0], j}, inner.coeff * scalar_monomial(0, 2 * c[0] - j));
    ws.add({j, c[0]}, -inner.coeff * scalar_monomial(0, j - 2 * c[0]));
  }
  ModVector v = word_act(ws);
  LevelUniScalar residual;
  for (const auto& [s, c] : v)
    residual += specialize_level(c);
  return residual;
}

/// Classical Jacobi residual built from the q -> 1 values of the 2-bracket.
inline Rat classical_jacobi_residual(GenIndex m, GenIndex n, GenIndex k)
{
  auto structure = [](GenIndex a, GenIndex b) { return classical_value(specialize_pq(bracket2(a, b).coeff)); };
  const GenIndex cyc[3][3] = {{m, n, k}, {n, k, m}, {k, m, n}};
  Rat residual = 0;
  for (const auto& c : cyc)
    residual += structure(c[1], c[2]) * structure(c[0], c[1] + c[2]);
  return residual;
}

} // namespace pqvw
