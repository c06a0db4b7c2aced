#pragma once

// Random generators for property tests.

#include <random>

#include "pqvw/ring.hpp"

namespace pqvw::testing {

class Generator
{
public:
  explicit Generator(std::uint64_t seed) : m_rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(m_rng); }

  Rat rational()
  {
    Rat r(uniform(-9, 9), uniform(1, 4));
    r.canonicalize();
    return r;
  }

  template <std::size_t N>
  Laurent<N> laurent(int max_terms = 4, int max_exp = 3)
  {
    std::vector<typename Laurent<N>::Term> terms;
    const int k = uniform(0, max_terms);
    for (int i = 0; i < k; ++i) {
      typename Laurent<N>::Exponent e;
      for (auto& x : e)
        x = uniform(-max_exp, max_exp);
      terms.push_back({e, rational()});
    }
    return Laurent<N>::from_terms(std::move(terms));
  }

  LPoly lpoly(int max_terms = 4, int max_exp = 3) { return laurent<2>(max_terms, max_exp); }

  LPoly nonzero_lpoly()
  {
    LPoly r;
    while (r.is_zero())
      r = lpoly();
    return r;
  }

  Scalar scalar() { return Scalar(lpoly(), static_cast<unsigned>(uniform(0, 2))); }

  ModScalar mod_scalar()
  {
    return ModScalar(laurent<4>(4, 2), static_cast<unsigned>(uniform(0, 2)));
  }

private:
  std::mt19937_64 m_rng;
};

inline LPoly p_var(int k = 1) { return pq_monomial(k, 0); }
inline LPoly q_var(int k = 1) { return pq_monomial(0, k); }

} // namespace pqvw::testing
