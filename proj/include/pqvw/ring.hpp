#pragma once

// Coefficient rings of the (p,q)-deformed Virasoro-Witt algebra.
//
//   Scalar         Q[p^+-1, q^+-1] localized at (q - p^-1)   structure constants
//   ModScalar      Q[p, q, P, Q]^+-1 localized at (q - p^-1) Fock-module coefficients
//   UniScalar      Q[q^+-1] localized at (q - q^-1)          the p -> q limit
//   LevelUniScalar Q[q, Q]^+-1 localized at (q - q^-1)       module coefficients at p = q
//
// P = p^nu and Q = q^nu stand for a symbolic Fock level nu.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <utility>

#include "pqvw/errors.hpp"
#include "pqvw/laurent.hpp"
#include "pqvw/localized.hpp"

namespace pqvw {

namespace detail {

// True iff every coefficient of the grouped sum vanishes.
template <class Key>
bool all_zero(const std::map<Key, Rat>& groups)
{
  for (const auto& [k, c] : groups)
    if (sgn(c) != 0)
      return false;
  return true;
}

} // namespace detail

/// (p, q), localized at q - p^-1.
struct PQRing
{
  static constexpr std::size_t vars = 2;
  static constexpr std::array<std::string_view, 2> names{"p", "q"};
  static constexpr const char* denominator_text = "q - p^-1";

  static const Laurent<2>& denominator()
  {
    static const Laurent<2> d = Laurent<2>::variable(1) - Laurent<2>::variable(0, -1);
    return d;
  }

  // q - p^-1 divides f iff f vanishes on q = p^-1.
  static bool may_divide(const Laurent<2>& f)
  {
    std::map<int, Rat> g;
    for (const auto& t : f.terms())
      g[t.exp[0] - t.exp[1]] += t.coeff;
    return detail::all_zero(g);
  }
};

/// (p, q, P, Q), localized at q - p^-1.
struct LevelRing
{
  static constexpr std::size_t vars = 4;
  static constexpr std::array<std::string_view, 4> names{"p", "q", "P", "Q"};
  static constexpr const char* denominator_text = "q - p^-1";

  static const Laurent<4>& denominator()
  {
    static const Laurent<4> d = Laurent<4>::variable(1) - Laurent<4>::variable(0, -1);
    return d;
  }

  static bool may_divide(const Laurent<4>& f)
  {
    std::map<std::array<int, 3>, Rat> g;
    for (const auto& t : f.terms())
      g[{t.exp[0] - t.exp[1], t.exp[2], t.exp[3]}] += t.coeff;
    return detail::all_zero(g);
  }
};

/// q alone, localized at q - q^-1.
struct QRing
{
  static constexpr std::size_t vars = 1;
  static constexpr std::array<std::string_view, 1> names{"q"};
  static constexpr const char* denominator_text = "q - q^-1";

  static const Laurent<1>& denominator()
  {
    static const Laurent<1> d = Laurent<1>::variable(0) - Laurent<1>::variable(0, -1);
    return d;
  }

  // q - q^-1 = (q - 1)(q + 1)/q: vanish at q = 1 and q = -1.
  static bool may_divide(const Laurent<1>& f)
  {
    Rat at_one = 0, at_minus_one = 0;
    for (const auto& t : f.terms()) {
      at_one += t.coeff;
      at_minus_one += (t.exp[0] % 2 == 0) ? t.coeff : Rat(-t.coeff);
    }
    return sgn(at_one) == 0 && sgn(at_minus_one) == 0;
  }
};

/// (q, Q), localized at q - q^-1.
struct QLevelRing
{
  static constexpr std::size_t vars = 2;
  static constexpr std::array<std::string_view, 2> names{"q", "Q"};
  static constexpr const char* denominator_text = "q - q^-1";

  static const Laurent<2>& denominator()
  {
    static const Laurent<2> d = Laurent<2>::variable(0) - Laurent<2>::variable(0, -1);
    return d;
  }

  static bool may_divide(const Laurent<2>& f)
  {
    std::map<int, Rat> at_one, at_minus_one;
    for (const auto& t : f.terms()) {
      at_one[t.exp[1]] += t.coeff;
      at_minus_one[t.exp[1]] += (t.exp[0] % 2 == 0) ? t.coeff : Rat(-t.coeff);
    }
    return detail::all_zero(at_one) && detail::all_zero(at_minus_one);
  }
};

using LPoly = Laurent<2>;
using Scalar = Localized<PQRing>;
using ModPoly = Laurent<4>;
using ModScalar = Localized<LevelRing>;
using UniPoly = Laurent<1>;
using UniScalar = Localized<QRing>;
using LevelUniScalar = Localized<QLevelRing>;

// --- Laurent polynomial helpers ---------------------------------------------

/// c * p^a q^b.
inline LPoly pq_monomial(int a, int b, const Rat& c = Rat(1)) { return LPoly::monomial({a, b}, c); }

inline LPoly lp_exact_div(const LPoly& a, const LPoly& d) { return a.exact_div(d); }

inline Scalar scalar_normalize(LPoly num, unsigned e) { return Scalar(std::move(num), e); }

inline Scalar scalar_monomial(int a, int b, const Rat& c = Rat(1)) { return Scalar(pq_monomial(a, b, c)); }

/// [x]_{p,q} = (q^x - p^-x) / (q - p^-1).
inline Scalar pq_number(int x) { return Scalar(pq_monomial(0, x) - pq_monomial(-x, 0), 1); }

/// [x]_q = (q^x - q^-x) / (q - q^-1).
inline UniScalar q_number(int x)
{
  return UniScalar(UniPoly::monomial({x}) - UniPoly::monomial({-x}), 1);
}

// --- limits -------------------------------------------------------------------

/// The p -> q limit: substitutes p := q, so (q - p^-1) becomes (q - q^-1).
inline UniScalar specialize_pq(const Scalar& a)
{
  auto num = a.numerator().remap<1>([](const LPoly::Exponent& e) {
    return std::pair{UniPoly::Exponent{e[0] + e[1]}, 1};
  });
  return UniScalar(std::move(num), a.exponent());
}

/// The q -> 1 value of u.
///
/// Writes (q - q^-1)^e = (q - 1)^e (q + 1)^e q^-e; the limit exists iff
/// (q - 1)^e divides the numerator after clearing powers of q.
inline Rat classical_value(const UniScalar& u)
{
  if (u.is_zero())
    return Rat(0);
  const UniPoly& num = u.numerator();
  const unsigned e = u.exponent();
  UniPoly reduced = num.times_monomial({-num.min_degrees()[0]});
  if (e > 0) {
    UniPoly q_minus_one = UniPoly::variable(0) - UniPoly(1L);
    auto quot = reduced.try_divide(q_minus_one.pow(e));
    if (!quot)
      throw PoleAtOne("q -> 1 limit does not exist for " + u.to_string());
    reduced = std::move(*quot);
  }
  Rat value = 0;
  for (const auto& t : reduced.terms())
    value += t.coeff;
  Rat two_pow = 1;
  for (unsigned i = 0; i < e; ++i)
    two_pow *= 2;
  return Rat(value / two_pow);
}

// --- four-variable module ring ---------------------------------------------

inline ModScalar lift(const Scalar& s)
{
  auto num = s.numerator().remap<4>([](const LPoly::Exponent& e) {
    return std::pair{ModPoly::Exponent{e[0], e[1], 0, 0}, 1};
  });
  return ModScalar::raw(std::move(num), s.exponent());
}

/// Drops the level variables; nullopt if the value depends on P or Q.
inline std::optional<Scalar> lower(const ModScalar& m)
{
  for (const auto& t : m.numerator().terms())
    if (t.exp[2] != 0 || t.exp[3] != 0)
      return std::nullopt;
  auto num = m.numerator().remap<2>([](const ModPoly::Exponent& e) {
    return std::pair{LPoly::Exponent{e[0], e[1]}, 1};
  });
  return Scalar::raw(std::move(num), m.exponent());
}

/// Level shift nu -> nu + m: P -> P p^m, Q -> Q q^m.
inline ModScalar mod_shift(const ModScalar& c, int m)
{
  if (m == 0)
    return c;
  auto num = c.numerator().remap<4>([m](const ModPoly::Exponent& e) {
    return std::pair{ModPoly::Exponent{e[0] + m * e[2], e[1] + m * e[3], e[2], e[3]}, 1};
  });
  return ModScalar::raw(std::move(num), c.exponent());
}

/// Exact quotient a / d in the localized four-variable ring.
inline ModScalar mod_exact_div(const ModScalar& a, const ModScalar& d)
{
  if (d.is_zero())
    throw NotDivisible("division by zero module coefficient");
  if (a.is_zero())
    return {};
  unsigned ea = a.exponent(), ed = d.exponent();
  ModPoly num = ed > ea ? a.numerator_at(ed) : a.numerator();
  auto quot = num.try_divide(d.numerator());
  if (!quot)
    throw NotDivisible("module coefficient is not exactly divisible");
  return ModScalar(std::move(*quot), ea > ed ? ea - ed : 0);
}

/// [nu + s]_{p,q} = (Q q^s - P^-1 p^-s) / (q - p^-1).
inline ModScalar level_number(int s)
{
  return ModScalar::raw(ModPoly::monomial({0, s, 0, 1}) - ModPoly::monomial({-s, 0, -1, 0}), 1);
}

/// Evaluation at a concrete level: P = p^nu, Q = q^nu.
inline Scalar at_level(const ModScalar& m, int nu)
{
  auto num = m.numerator().remap<2>([nu](const ModPoly::Exponent& e) {
    return std::pair{LPoly::Exponent{e[0] + nu * e[2], e[1] + nu * e[3]}, 1};
  });
  return Scalar(std::move(num), m.exponent());
}

/// p := q and P := Q, the symbolic-level form of the p -> q limit.
inline LevelUniScalar specialize_level(const ModScalar& m)
{
  auto num = m.numerator().remap<2>([](const ModPoly::Exponent& e) {
    return std::pair{LPoly::Exponent{e[0] + e[1], e[2] + e[3]}, 1};
  });
  return LevelUniScalar(std::move(num), m.exponent());
}

} // namespace pqvw
