#pragma once

// Ground truth for the closed forms: the (p,q)-oscillator realized on the
// extended Fock module with basis |nu + s>, s in Z, and nu a symbolic level
// (P = p^nu, Q = q^nu). Brackets are expanded from their recursive definitions
// into weighted words of generators, applied to |nu>, and the structure
// constant is read off by exact division by the action of L_S.
//
// Module conventions:
//   a |nu> = [nu]_{p,q} |nu - 1>,  a^+ |nu> = |nu + 1>,  N |nu> = nu |nu>,
//   L_m |nu> = -[nu]_{p,q} p^{nu + m} |nu + m>.
// Negative powers of a^+ are formal, so every integer mode acts.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqvw/bracket.hpp"
#include "pqvw/cache.hpp"
#include "pqvw/errors.hpp"
#include "pqvw/ring.hpp"

namespace pqvw {

/// Operator product L_{m_1} L_{m_2} ... (applied right to left).
using Word = std::vector<GenIndex>;

class WordSum
{
public:
  const std::map<Word, Scalar>& entries() const { return m_entries; }
  bool is_zero() const { return m_entries.empty(); }
  std::size_t size() const { return m_entries.size(); }

  void add(const Word& w, const Scalar& c)
  {
    if (c.is_zero())
      return;
    auto [it, inserted] = m_entries.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        m_entries.erase(it);
    }
  }

  WordSum& operator+=(const WordSum& o)
  {
    for (const auto& [w, c] : o.m_entries)
      add(w, c);
    return *this;
  }

  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }

  /// weight * L_m * (*this).
  WordSum left_multiply(GenIndex m, const Scalar& weight) const
  {
    WordSum r;
    for (const auto& [w, c] : m_entries) {
      Word nw;
      nw.reserve(w.size() + 1);
      nw.push_back(m);
      nw.insert(nw.end(), w.begin(), w.end());
      r.add(nw, c * weight);
    }
    return r;
  }

private:
  std::map<Word, Scalar> m_entries;
};

/// sum_s c_s |nu + s>.
using ModVector = std::map<int, ModScalar>;

inline void accumulate(ModVector& v, int shift, const ModScalar& c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = v.try_emplace(shift, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      v.erase(it);
  }
}

/// |nu>.
inline ModVector vacuum_level() { return {{0, ModScalar(1L)}}; }

/// -[nu + s] P p^{s + m}: the coefficient L_m picks up on |nu + s>.
inline ModScalar action_coefficient(GenIndex m, int s)
{
  // -(Q q^s - P^-1 p^-s) P p^{s+m} / (q - p^-1) = (p^m - P Q p^{s+m} q^s) / (q - p^-1)
  return ModScalar(ModPoly::monomial({m, 0, 0, 0}) - ModPoly::monomial({s + m, s, 1, 1}), 1);
}

inline ModVector fock_act(GenIndex m, const ModVector& v)
{
  ModVector out;
  for (const auto& [s, c] : v)
    accumulate(out, s + m, c * action_coefficient(m, s));
  return out;
}

namespace detail {

// Un-normalized numerator and shift of a word applied to |nu>; the
// denominator is (q - p^-1)^{|word|}.
inline std::pair<ModPoly, int> word_numerator(const Word& w)
{
  ModPoly num(1L);
  int s = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int m = *it;
    num *= ModPoly::monomial({m, 0, 0, 0}) - ModPoly::monomial({s + m, s, 1, 1});
    s += m;
  }
  return {std::move(num), s};
}

} // namespace detail

/// Applies every word of ws to |nu> and sums with the Scalar weights.
inline ModVector word_act(const WordSum& ws)
{
  // Accumulate numerators per (shift, denominator exponent), normalize once.
  std::map<int, std::map<unsigned, ModPoly>> acc;
  for (const auto& [w, weight] : ws.entries()) {
    auto [num, s] = detail::word_numerator(w);
    ModScalar lw = lift(weight);
    const unsigned e = static_cast<unsigned>(w.size()) + lw.exponent();
    acc[s][e] += num * lw.numerator();
  }
  ModVector out;
  for (auto& [s, by_e] : acc) {
    const unsigned top = by_e.rbegin()->first;
    ModPoly total;
    for (auto& [e, num] : by_e)
      total += e == top ? num : num * ModScalar::denominator_power(top - e);
    ModScalar c(std::move(total), top);
    if (!c.is_zero())
      out.emplace(s, std::move(c));
  }
  return out;
}

/// q^m p^-n L_m L_n - q^n p^-m L_n L_m.
inline WordSum bracket2_def(GenIndex m, GenIndex n)
{
  WordSum r;
  r.add({m, n}, scalar_monomial(-n, m));
  r.add({n, m}, scalar_monomial(-m, n, Rat(-1)));
  return r;
}

/// p^m q^{m-(n+k)} L_m [L_n, L_k] + cyclic, with the weighted 2-brackets.
inline WordSum bracket3_def(GenIndex m, GenIndex n, GenIndex k)
{
  WordSum r;
  const GenIndex cyc[3][3] = {{m, n, k}, {n, k, m}, {k, m, n}};
  for (const auto& c : cyc)
    r += bracket2_def(c[1], c[2]).left_multiply(c[0], scalar_monomial(c[0], c[0] - (c[1] + c[2])));
  return r;
}

namespace detail {

inline ConcurrentCache<IndexTuple, WordSum>& word_bracket_cache()
{
  static ConcurrentCache<IndexTuple, WordSum> cache;
  return cache;
}

} // namespace detail

/// The n-bracket from its recursive definition, fully expanded into words:
///   sum_s (-1)^{s+1} (pq)^{x i_s + y (sum - i_s)} L_{i_s} [i_1 .. ^i_s .. i_n].
inline WordSum bracketn_def(std::span<const GenIndex> indices)
{
  const int n = static_cast<int>(indices.size());
  if (n < 3)
    throw BadArity("bracketn_def needs n >= 3");
  if (n == 3)
    return bracket3_def(indices[0], indices[1], indices[2]);
  IndexTuple key(indices.begin(), indices.end());
  return detail::word_bracket_cache().get_or_compute(key, [&] {
    const auto [x, y] = recursion_weights(n);
    const GenIndex total = index_sum(indices);
    WordSum r;
    for (int s = 0; s < n; ++s) {
      IndexTuple rest;
      rest.reserve(n - 1);
      for (int j = 0; j < n; ++j)
        if (j != s)
          rest.push_back(indices[j]);
      const int e = x * indices[s] + y * (total - indices[s]);
      r += bracketn_def(rest).left_multiply(indices[s], scalar_monomial(e, e, Rat(s % 2 ? -1 : 1)));
    }
    return r;
  });
}

/// Reads ws as c * L_S on the module and returns (c, S).
///
/// `total` supplies S when ws is zero. Throws NotProportional when the action is
/// not a Scalar multiple of a single generator's action.
inline Term extract_structure_constant(const WordSum& ws, std::optional<GenIndex> total = std::nullopt)
{
  ModVector v = word_act(ws);
  if (v.empty()) {
    GenIndex s = total.value_or(ws.is_zero() ? 0 : index_sum(ws.entries().begin()->first));
    return {Scalar(), s};
  }
  if (v.size() != 1)
    throw NotProportional("word sum spreads over several levels");
  const auto& [s, c] = *v.begin();
  ModScalar quotient;
  try {
    quotient = mod_exact_div(c, action_coefficient(s, 0));
  } catch (const NotDivisible&) {
    throw NotProportional("word sum is not a multiple of L_" + std::to_string(s));
  }
  auto scalar = lower(quotient);
  if (!scalar)
    throw NotProportional("ratio to L_" + std::to_string(s) + " depends on the level");
  return {std::move(*scalar), s};
}

/// Residuals of the oscillator relations on the symbolic level |nu>.
struct OscillatorReport
{
  ModScalar q_relation;  // a a^+ - q a^+ a - p^-N
  ModScalar p_relation;  // a a^+ - p^-1 a^+ a - q^N
  int lowering_grade = 0; // [N, a] = grade * a
  int raising_grade = 0;  // [N, a^+] = grade * a^+

  bool pass() const
  {
    return q_relation.is_zero() && p_relation.is_zero() && lowering_grade == -1 && raising_grade == 1;
  }
};

namespace oscillator {

inline ModVector annihilate(const ModVector& v)
{
  ModVector out;
  for (const auto& [s, c] : v)
    accumulate(out, s - 1, c * level_number(s));
  return out;
}

inline ModVector create(const ModVector& v)
{
  ModVector out;
  for (const auto& [s, c] : v)
    out.emplace(s + 1, c);
  return out;
}

/// p^-N.
inline ModVector p_pow_minus_n(const ModVector& v)
{
  ModVector out;
  for (const auto& [s, c] : v)
    accumulate(out, s, c * ModScalar(ModPoly::monomial({-s, 0, -1, 0})));
  return out;
}

/// q^N.
inline ModVector q_pow_n(const ModVector& v)
{
  ModVector out;
  for (const auto& [s, c] : v)
    accumulate(out, s, c * ModScalar(ModPoly::monomial({0, s, 0, 1})));
  return out;
}

inline ModVector scale(const ModVector& v, const ModScalar& k)
{
  ModVector out;
  for (const auto& [s, c] : v)
    accumulate(out, s, c * k);
  return out;
}

inline ModVector combine(const ModVector& a, const ModVector& b, int sign_b)
{
  ModVector out = a;
  for (const auto& [s, c] : b)
    accumulate(out, s, sign_b < 0 ? -c : c);
  return out;
}

// N acts diagonally by nu + s, so [N, X] = (shift(X v) - shift(v)) X on a
// homogeneous operator X.
template <class Op>
int grade(Op op)
{
  ModVector out = op(vacuum_level());
  return out.empty() ? 0 : out.begin()->first;
}

} // namespace oscillator

inline OscillatorReport osc_relations_check()
{
  using namespace oscillator;
  const ModVector v = vacuum_level();
  ModVector aad = annihilate(create(v));
  ModVector ada = create(annihilate(v));
  ModScalar q = ModScalar(ModPoly::variable(1));
  ModScalar p_inv = ModScalar(ModPoly::variable(0, -1));

  ModVector r1 = combine(combine(aad, scale(ada, q), -1), p_pow_minus_n(v), -1);
  ModVector r2 = combine(combine(aad, scale(ada, p_inv), -1), q_pow_n(v), -1);

  OscillatorReport rep;
  rep.q_relation = r1.empty() ? ModScalar() : r1.begin()->second;
  rep.p_relation = r2.empty() ? ModScalar() : r2.begin()->second;
  rep.lowering_grade = grade(annihilate);
  rep.raising_grade = grade(create);
  return rep;
}

} // namespace pqvw
