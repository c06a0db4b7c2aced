#pragma once

// Generators L_m, formal sums of generators, and the sign-free closed forms of
// the deformed brackets.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqvw/errors.hpp"
#include "pqvw/ring.hpp"

namespace pqvw {

/// Mode number m of the generator L_m = -p^N (a^+)^{m+1} a.
using GenIndex = int;
using IndexTuple = std::vector<GenIndex>;

/// coeff * L_index.
struct Term
{
  Scalar coeff;
  GenIndex index = 0;

  bool is_zero() const { return coeff.is_zero(); }
  friend bool operator==(const Term& a, const Term& b)
  {
    // Zero terms are equal whatever their index.
    if (a.is_zero() || b.is_zero())
      return a.is_zero() && b.is_zero();
    return a.index == b.index && a.coeff == b.coeff;
  }
};

/// Finite linear combination sum_m c_m L_m.
class OpSum
{
public:
  OpSum() = default;
  OpSum(GenIndex m) { m_entries.emplace(m, Scalar(1L)); }
  OpSum(const Term& t) { add(t.index, t.coeff); }

  const std::map<GenIndex, Scalar>& entries() const { return m_entries; }
  bool is_zero() const { return m_entries.empty(); }

  Scalar coefficient(GenIndex m) const
  {
    auto it = m_entries.find(m);
    return it == m_entries.end() ? Scalar() : it->second;
  }

  void add(GenIndex m, const Scalar& c)
  {
    if (c.is_zero())
      return;
    auto [it, inserted] = m_entries.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        m_entries.erase(it);
    }
  }

  OpSum& operator+=(const OpSum& o)
  {
    for (const auto& [m, c] : o.m_entries)
      add(m, c);
    return *this;
  }

  friend OpSum operator+(OpSum a, const OpSum& b) { return a += b; }
  friend OpSum operator-(OpSum a, const OpSum& b) { return a += b * Scalar(-1L); }

  friend OpSum operator*(const OpSum& a, const Scalar& c)
  {
    OpSum r;
    if (c.is_zero())
      return r;
    for (const auto& [m, x] : a.m_entries)
      r.add(m, x * c);
    return r;
  }

  friend bool operator==(const OpSum& a, const OpSum& b) { return a.m_entries == b.m_entries; }

private:
  std::map<GenIndex, Scalar> m_entries;
};

inline GenIndex index_sum(std::span<const GenIndex> idx)
{
  return std::accumulate(idx.begin(), idx.end(), GenIndex{0});
}

inline bool has_repeat(std::span<const GenIndex> idx)
{
  IndexTuple s(idx.begin(), idx.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

/// Sign of the permutation that sorts idx ascending; 0 on repeats.
inline int sorting_sign(std::span<const GenIndex> idx)
{
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j])
        return 0;
      if (idx[i] > idx[j])
        sign = -sign;
    }
  return sign;
}

/// [L_m, L_n]_{(q^m p^-n, q^n p^-m)} = -(q p^-1)^m [n - m]_{p,q} L_{m+n}.
inline Term bracket2(GenIndex m, GenIndex n)
{
  return {scalar_monomial(-m, m, Rat(-1)) * pq_number(n - m), m + n};
}

struct RecursionWeights
{
  int x;
  int y;
};

/// Weights of the n-bracket recursion: ((n-1)/2, -1) for odd n, (n/2, 0) for even n.
inline RecursionWeights recursion_weights(int n)
{
  if (n < 4)
    throw BadArity("recursion weights are defined for n >= 4, got " + std::to_string(n));
  if (n % 2)
    return {(n - 1) / 2, -1};
  return {n / 2, 0};
}

/// floor((n-1)/2), the p-shift of the determinant rows and of the prefactor.
inline int row_shift(int n) { return (n - 1) / 2; }

/// det of the n x n matrix with entry(t, j) = p^{(t - 2 floor((n-1)/2)) i_j} q^{t i_j}.
///
/// Every entry is a monomial, so the Leibniz expansion is a sum of n! signed
/// monomials.
inline LPoly vandermonde_det(std::span<const GenIndex> indices, int n)
{
  if (n < 3 || indices.size() != static_cast<std::size_t>(n))
    throw BadArity("vandermonde_det needs n >= 3 indices");
  if (has_repeat(indices))
    return {};
  const int shift = 2 * row_shift(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<LPoly::Term> terms;
  do {
    int pe = 0, qe = 0;
    for (int t = 0; t < n; ++t) {
      pe += (t - shift) * indices[perm[t]];
      qe += t * indices[perm[t]];
    }
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        inversions += perm[a] > perm[b];
    terms.push_back({{pe, qe}, Rat(inversions % 2 ? -1 : 1)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return LPoly::from_terms(std::move(terms));
}

/// (p q^-1)^{floor((n-1)/2) sum i} det / (q - p^-1)^{n-1}, without sign(n).
///
/// Throws NotDivisible if the determinant is not divisible by (q - p^-1)^{n-1};
/// divisibility is what makes the structure constants Laurent polynomials.
inline Scalar closed_form_unsigned(std::span<const GenIndex> indices)
{
  const int n = static_cast<int>(indices.size());
  LPoly det = vandermonde_det(indices, n);
  if (det.is_zero())
    return {};
  auto quot = det.try_divide(PQRing::denominator().pow(n - 1));
  if (!quot)
    throw NotDivisible("determinant not divisible by (q - p^-1)^" + std::to_string(n - 1));
  const int f = row_shift(n) * index_sum(indices);
  return Scalar(quot->times_monomial({f, -f}));
}

/// The 3-bracket in its explicit 3 x 3 determinant form:
///   -(p q^-1)^{m+n+k} / (q - p^-1)^2 det[p^-2i; p^-i q^i; q^2i]  L_{m+n+k}.
inline Term bracket3_closed(GenIndex m, GenIndex n, GenIndex k)
{
  const GenIndex s = m + n + k;
  if (m == n || n == k || m == k)
    return {Scalar(), s};
  auto row0 = [](int i) { return pq_monomial(-2 * i, 0); };
  auto row1 = [](int i) { return pq_monomial(-i, i); };
  auto row2 = [](int i) { return pq_monomial(0, 2 * i); };
  LPoly det = row0(m) * (row1(n) * row2(k) - row1(k) * row2(n)) -
              row0(n) * (row1(m) * row2(k) - row1(k) * row2(m)) +
              row0(k) * (row1(m) * row2(n) - row1(n) * row2(m));
  return {Scalar(det.times_monomial({s, -s}, Rat(-1)), 2), s};
}

} // namespace pqvw
