#pragma once

// The n-bracket of the (p,q)-deformed Virasoro-Witt n-algebra in closed form:
//
//   [L_{i_1}, ..., L_{i_n}] = sign(n) (p q^-1)^{floor((n-1)/2) sum i}
//                             det(...) / (q - p^-1)^{n-1}  L_{sum i}
//
// sign(n) is calibrated once per n against the recursive definition evaluated
// on the Fock module, then frozen.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pqvw/bracket.hpp"
#include "pqvw/cache.hpp"
#include "pqvw/errors.hpp"
#include "pqvw/oracle.hpp"

namespace pqvw {

/// sign(n) for n >= 3 by comparing the recursive bracket with the sign-free
/// closed form on the witness (0, 1, ..., n-1).
inline int derive_sign(int n)
{
  if (n < 3)
    throw BadArity("sign(n) is defined for n >= 3");
  if (n == 3)
    return -1;
  IndexTuple witness(n);
  std::iota(witness.begin(), witness.end(), 0);
  Scalar closed = closed_form_unsigned(witness);
  if (closed.is_zero())
    throw InconsistentSign("closed form vanishes on the witness tuple");
  Term recursive = extract_structure_constant(bracketn_def(witness), index_sum(witness));
  if (recursive.coeff == closed)
    return 1;
  if (recursive.coeff == -closed)
    return -1;
  throw InconsistentSign("recursive and closed " + std::to_string(n) + "-brackets differ by " +
                         recursive.coeff.to_string() + " vs " + closed.to_string());
}

/// Write-once table of derived signs. Call prime() before fanning out sweeps.
class SignTable
{
public:
  static SignTable& instance()
  {
    static SignTable table;
    return table;
  }

  int sign(int n)
  {
    {
      std::lock_guard lock(m_mutex);
      if (auto it = m_signs.find(n); it != m_signs.end())
        return it->second;
    }
    int s = derive_sign(n);
    std::lock_guard lock(m_mutex);
    return m_signs.try_emplace(n, s).first->second;
  }

  void prime(int max_n)
  {
    for (int n = 3; n <= max_n; ++n)
      sign(n);
  }

  std::map<int, int> snapshot() const
  {
    std::lock_guard lock(m_mutex);
    return m_signs;
  }

private:
  mutable std::mutex m_mutex;
  std::map<int, int> m_signs;
};

inline int bracket_sign(int n) { return SignTable::instance().sign(n); }

namespace detail {

inline ConcurrentCache<IndexTuple, Scalar>& closed_cache()
{
  static ConcurrentCache<IndexTuple, Scalar> cache;
  return cache;
}

} // namespace detail

/// Closed form of the n-bracket, n >= 3. Repeated indices give the zero term.
inline Term bracketn_closed(std::span<const GenIndex> indices)
{
  const int n = static_cast<int>(indices.size());
  if (n < 3)
    throw BadArity("bracketn_closed needs n >= 3");
  const GenIndex total = index_sum(indices);
  const int perm = sorting_sign(indices);
  if (perm == 0)
    return {Scalar(), total};
  IndexTuple sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  Scalar base = detail::closed_cache().get_or_compute(
      sorted, [&] { return closed_form_unsigned(sorted) * Scalar(long(bracket_sign(n))); });
  return {perm > 0 ? base : -base, total};
}

/// The algebra's bracket of generators at any arity n >= 2.
inline Term bracket(std::span<const GenIndex> indices)
{
  if (indices.size() == 2)
    return bracket2(indices[0], indices[1]);
  return bracketn_closed(indices);
}

inline Term bracket(std::initializer_list<GenIndex> indices)
{
  return bracket(std::span<const GenIndex>(indices.begin(), indices.size()));
}

/// One step of the bracket recursion with the inner brackets in closed form:
/// each term is a two-letter word L_{i_s} L_{sum - i_s}. Read off with
/// extract_structure_constant, this is a third route to the structure
/// constant, between the closed form and the fully expanded recursion.
inline WordSum bracketn_one_step(std::span<const GenIndex> indices)
{
  const int n = static_cast<int>(indices.size());
  if (n < 3)
    throw BadArity("bracketn_one_step needs n >= 3");
  const GenIndex total = index_sum(indices);
  WordSum r;
  if (n == 3) {
    const GenIndex cyc[3][3] = {{indices[0], indices[1], indices[2]},
                                {indices[1], indices[2], indices[0]},
                                {indices[2], indices[0], indices[1]}};
    for (const auto& c : cyc) {
      Term inner = bracket2(c[1], c[2]);
      r.add({c[0], inner.index}, inner.coeff * scalar_monomial(c[0], c[0] - (c[1] + c[2])));
    }
    return r;
  }
  const auto [x, y] = recursion_weights(n);
  IndexTuple rest(n - 1);
  for (int s = 0; s < n; ++s) {
    for (int j = 0, k = 0; j < n; ++j)
      if (j != s)
        rest[k++] = indices[j];
    Term inner = bracket(rest);
    const int e = x * indices[s] + y * (total - indices[s]);
    r.add({indices[s], inner.index}, inner.coeff * scalar_monomial(e, e, Rat(s % 2 ? -1 : 1)));
  }
  return r;
}

/// Multilinear extension of the bracket to formal sums of generators.
inline OpSum bracket_multilinear(std::span<const OpSum> args)
{
  const std::size_t n = args.size();
  if (n < 2)
    throw BadArity("bracket_multilinear needs at least two arguments");
  OpSum out;
  for (const auto& a : args)
    if (a.is_zero())
      return out;
  IndexTuple idx(n);
  std::vector<const Scalar*> coeff(n);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      Term t = bracket(idx);
      if (t.is_zero())
        return;
      Scalar c = t.coeff;
      for (const auto* x : coeff)
        c *= *x;
      out.add(t.index, c);
      return;
    }
    for (const auto& [m, c] : args[pos].entries()) {
      idx[pos] = m;
      coeff[pos] = &c;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

} // namespace pqvw
