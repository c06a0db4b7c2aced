#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "pqvw/laurent.hpp"

namespace pqvw {

/// Laurent ring localized at the powers of one fixed element D.
///
/// The value is num / D^e. The representation is kept normalized: when e > 0
/// the numerator is not divisible by D, and zero is stored with e = 0. Two
/// normalized values are equal iff their representations are equal.
///
/// Ring supplies `vars`, `names`, `denominator()`, `denominator_text` and
/// `may_divide(num)`, a cheap necessary-and-sufficient test for D | num.
template <class Ring>
class Localized
{
public:
  using Poly = Laurent<Ring::vars>;

  Localized() = default;
  Localized(long c) : m_num(c) {}
  Localized(const Rat& c) : m_num(c) {}
  Localized(Poly num, unsigned e = 0) : m_num(std::move(num)), m_e(e) { normalize(); }

  /// Skips normalization. Callers must normalize before comparing.
  static Localized raw(Poly num, unsigned e)
  {
    Localized r;
    r.m_num = std::move(num);
    r.m_e = e;
    return r;
  }

  const Poly& numerator() const { return m_num; }
  unsigned exponent() const { return m_e; }
  bool is_zero() const { return m_num.is_zero(); }

  static Poly denominator_power(unsigned k) { return Ring::denominator().pow(k); }

  Localized& normalize()
  {
    if (m_num.is_zero()) {
      m_e = 0;
      return *this;
    }
    while (m_e > 0 && Ring::may_divide(m_num)) {
      m_num = m_num.exact_div(Ring::denominator());
      --m_e;
    }
    return *this;
  }

  /// Numerator rewritten over D^target (target >= exponent()).
  Poly numerator_at(unsigned target) const
  {
    if (target == m_e)
      return m_num;
    return m_num * denominator_power(target - m_e);
  }

  Localized operator-() const { return raw(-m_num, m_e); }

  friend Localized operator+(const Localized& a, const Localized& b)
  {
    if (a.is_zero())
      return b;
    if (b.is_zero())
      return a;
    unsigned e = std::max(a.m_e, b.m_e);
    return Localized(a.numerator_at(e) + b.numerator_at(e), e);
  }

  friend Localized operator-(const Localized& a, const Localized& b) { return a + (-b); }

  friend Localized operator*(const Localized& a, const Localized& b)
  {
    if (a.is_zero() || b.is_zero())
      return {};
    // D need not be irreducible (q - q^-1 = (q-1)(q+1)/q), so renormalize.
    return Localized(a.m_num * b.m_num, a.m_e + b.m_e);
  }

  Localized& operator+=(const Localized& b) { return *this = *this + b; }
  Localized& operator-=(const Localized& b) { return *this = *this - b; }
  Localized& operator*=(const Localized& b) { return *this = *this * b; }

  friend bool operator==(const Localized& a, const Localized& b)
  {
    return a.m_e == b.m_e && a.m_num == b.m_num;
  }

  std::string to_string() const
  {
    std::string num = m_num.to_string(Ring::names);
    if (m_e == 0)
      return num;
    std::string den = std::string("(") + Ring::denominator_text + ")";
    if (m_e > 1)
      den += "^" + std::to_string(m_e);
    return "(" + num + ")/" + den;
  }

private:
  Poly m_num;
  unsigned m_e = 0;
};

} // namespace pqvw
