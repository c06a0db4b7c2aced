#pragma once

// Sparse multivariate Laurent polynomials with exact rational coefficients.
//
// A Laurent<N> stores sum_k c_k x_0^{e_k0} ... x_{N-1}^{e_k,N-1} as a vector of
// terms sorted by lexicographic exponent order with no zero coefficients, so
// structural equality is mathematical equality.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pqvw/errors.hpp"

namespace pqvw {

using Rat = mpq_class;

inline std::string to_string(const Rat& r) { return r.get_str(); }

template <std::size_t N>
class Laurent
{
public:
  using Exponent = std::array<int, N>;

  struct Term
  {
    Exponent exp;
    Rat coeff;
  };

  Laurent() = default;

  Laurent(const Rat& c)
  {
    if (sgn(c) != 0)
      m_terms.push_back({Exponent{}, c});
  }

  Laurent(long c) : Laurent(Rat(c)) {}

  static Laurent monomial(const Exponent& e, const Rat& c = Rat(1))
  {
    Laurent r;
    if (sgn(c) != 0)
      r.m_terms.push_back({e, c});
    return r;
  }

  static Laurent variable(std::size_t i, int power = 1)
  {
    Exponent e{};
    e[i] = power;
    return monomial(e);
  }

  /// Sorts and combines arbitrary terms into canonical form.
  static Laurent from_terms(std::vector<Term> terms)
  {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    Laurent r;
    r.m_terms.reserve(terms.size());
    for (auto& t : terms) {
      if (!r.m_terms.empty() && r.m_terms.back().exp == t.exp)
        r.m_terms.back().coeff += t.coeff;
      else {
        r.drop_trailing_zero();
        r.m_terms.push_back(std::move(t));
      }
    }
    r.drop_trailing_zero();
    return r;
  }

  const std::vector<Term>& terms() const { return m_terms; }
  std::size_t size() const { return m_terms.size(); }
  bool is_zero() const { return m_terms.empty(); }

  bool is_constant() const
  {
    return m_terms.empty() || (m_terms.size() == 1 && m_terms.front().exp == Exponent{});
  }

  /// Coefficient of the monomial with exponent e (zero if absent).
  Rat coefficient(const Exponent& e) const
  {
    auto it = std::lower_bound(m_terms.begin(), m_terms.end(), e,
                               [](const Term& t, const Exponent& x) { return t.exp < x; });
    if (it != m_terms.end() && it->exp == e)
      return it->coeff;
    return Rat(0);
  }

  // Per-variable minimum and maximum exponent. Undefined on zero.
  Exponent min_degrees() const
  {
    Exponent r = m_terms.front().exp;
    for (const auto& t : m_terms)
      for (std::size_t i = 0; i < N; ++i)
        r[i] = std::min(r[i], t.exp[i]);
    return r;
  }

  Exponent max_degrees() const
  {
    Exponent r = m_terms.front().exp;
    for (const auto& t : m_terms)
      for (std::size_t i = 0; i < N; ++i)
        r[i] = std::max(r[i], t.exp[i]);
    return r;
  }

  Laurent operator-() const
  {
    Laurent r = *this;
    for (auto& t : r.m_terms)
      t.coeff = -t.coeff;
    return r;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return merge(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return merge(a, b, true); }

  friend Laurent operator*(const Laurent& a, const Laurent& b)
  {
    if (a.is_zero() || b.is_zero())
      return {};
    if (b.m_terms.size() == 1)
      return a.times_monomial(b.m_terms.front().exp, b.m_terms.front().coeff);
    if (a.m_terms.size() == 1)
      return b.times_monomial(a.m_terms.front().exp, a.m_terms.front().coeff);
    std::vector<Term> prod;
    prod.reserve(a.m_terms.size() * b.m_terms.size());
    for (const auto& x : a.m_terms)
      for (const auto& y : b.m_terms)
        prod.push_back({add(x.exp, y.exp), x.coeff * y.coeff});
    return from_terms(std::move(prod));
  }

  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

  /// Multiplication by c * x^e; keeps the term order, so no re-sorting.
  Laurent times_monomial(const Exponent& e, const Rat& c = Rat(1)) const
  {
    if (sgn(c) == 0)
      return {};
    Laurent r;
    r.m_terms.reserve(m_terms.size());
    for (const auto& t : m_terms)
      r.m_terms.push_back({add(t.exp, e), t.coeff * c});
    return r;
  }

  Laurent pow(unsigned k) const
  {
    Laurent result(1L);
    Laurent base = *this;
    while (k) {
      if (k & 1u)
        result *= base;
      k >>= 1u;
      if (k)
        base *= base;
    }
    return result;
  }

  /// Exact quotient, or nullopt if d does not divide *this in the Laurent ring.
  ///
  /// Lex-leading-term division. Lex order on Z^N is a group order, so leading
  /// terms multiply; degrees are additive per variable, so every quotient
  /// exponent lies in the box [min(a)-min(d), max(a)-max(d)], which bounds the
  /// loop.
  std::optional<Laurent> try_divide(const Laurent& d) const
  {
    if (d.is_zero())
      throw NotDivisible("division by zero Laurent polynomial");
    if (is_zero())
      return Laurent{};
    if (d.m_terms.size() == 1) {
      const auto& t = d.m_terms.front();
      return times_monomial(negate(t.exp), Rat(1) / t.coeff);
    }
    Exponent lo = sub(min_degrees(), d.min_degrees());
    Exponent hi = sub(max_degrees(), d.max_degrees());
    for (std::size_t i = 0; i < N; ++i)
      if (lo[i] > hi[i])
        return std::nullopt;

    std::map<Exponent, Rat> rem;
    for (const auto& t : m_terms)
      rem.emplace(t.exp, t.coeff);
    const Term& lead = d.m_terms.back();
    std::vector<Term> quot;
    while (!rem.empty()) {
      auto top = std::prev(rem.end());
      Exponent qe = sub(top->first, lead.exp);
      for (std::size_t i = 0; i < N; ++i)
        if (qe[i] < lo[i] || qe[i] > hi[i])
          return std::nullopt;
      Rat qc = top->second / lead.coeff;
      for (const auto& t : d.m_terms) {
        auto e = add(qe, t.exp);
        auto [it, inserted] = rem.try_emplace(e, 0);
        it->second -= qc * t.coeff;
        if (sgn(it->second) == 0)
          rem.erase(it);
      }
      quot.push_back({qe, std::move(qc)});
    }
    return from_terms(std::move(quot));
  }

  Laurent exact_div(const Laurent& d) const
  {
    auto r = try_divide(d);
    if (!r)
      throw NotDivisible("Laurent polynomial is not exactly divisible");
    return std::move(*r);
  }

  /// Substitution of monomials: x^e -> sign(e) * x^{f(e)} in an M-variable ring.
  template <std::size_t M, class F>
  Laurent<M> remap(F f) const
  {
    std::vector<typename Laurent<M>::Term> out;
    out.reserve(m_terms.size());
    for (const auto& t : m_terms) {
      auto [e, s] = f(t.exp);
      out.push_back({e, s < 0 ? Rat(-t.coeff) : t.coeff});
    }
    return Laurent<M>::from_terms(std::move(out));
  }

  /// Canonical text: terms in ascending lex order, `3/2*p^2*q^-1 - q`.
  std::string to_string(const std::array<std::string_view, N>& names) const
  {
    if (m_terms.empty())
      return "0";
    std::string out;
    bool first = true;
    for (const auto& t : m_terms) {
      const bool neg = sgn(t.coeff) < 0;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      Rat mag = abs(t.coeff);
      bool constant = t.exp == Exponent{};
      bool wrote = false;
      if (constant || mag != 1) {
        out += mag.get_str();
        wrote = true;
      }
      for (std::size_t i = 0; i < N; ++i) {
        if (t.exp[i] == 0)
          continue;
        if (wrote)
          out += "*";
        out += names[i];
        if (t.exp[i] != 1)
          out += "^" + std::to_string(t.exp[i]);
        wrote = true;
      }
    }
    return out;
  }

  friend bool operator==(const Laurent& a, const Laurent& b)
  {
    if (a.m_terms.size() != b.m_terms.size())
      return false;
    for (std::size_t i = 0; i < a.m_terms.size(); ++i)
      if (a.m_terms[i].exp != b.m_terms[i].exp || a.m_terms[i].coeff != b.m_terms[i].coeff)
        return false;
    return true;
  }

  static Exponent add(const Exponent& a, const Exponent& b)
  {
    Exponent r;
    for (std::size_t i = 0; i < N; ++i)
      r[i] = a[i] + b[i];
    return r;
  }

  static Exponent sub(const Exponent& a, const Exponent& b)
  {
    Exponent r;
    for (std::size_t i = 0; i < N; ++i)
      r[i] = a[i] - b[i];
    return r;
  }

  static Exponent negate(const Exponent& a)
  {
    Exponent r;
    for (std::size_t i = 0; i < N; ++i)
      r[i] = -a[i];
    return r;
  }

private:
  static Laurent merge(const Laurent& a, const Laurent& b, bool subtract)
  {
    Laurent r;
    r.m_terms.reserve(a.m_terms.size() + b.m_terms.size());
    auto i = a.m_terms.begin();
    auto j = b.m_terms.begin();
    while (i != a.m_terms.end() || j != b.m_terms.end()) {
      if (j == b.m_terms.end() || (i != a.m_terms.end() && i->exp < j->exp)) {
        r.m_terms.push_back(*i++);
      } else if (i == a.m_terms.end() || j->exp < i->exp) {
        r.m_terms.push_back({j->exp, subtract ? Rat(-j->coeff) : j->coeff});
        ++j;
      } else {
        Rat c = subtract ? Rat(i->coeff - j->coeff) : Rat(i->coeff + j->coeff);
        if (sgn(c) != 0)
          r.m_terms.push_back({i->exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void drop_trailing_zero()
  {
    if (!m_terms.empty() && sgn(m_terms.back().coeff) == 0)
      m_terms.pop_back();
  }

  std::vector<Term> m_terms;
};

} // namespace pqvw
