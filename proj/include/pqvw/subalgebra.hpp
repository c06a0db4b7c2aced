#pragma once

// Finite-dimensional n-Lie subalgebras spanned by generators: closure and FI
// over a span, the canonical n-dimensional subalgebras, the symmetric-matrix
// test for (n+1)-dimensional candidates, and bounded search.

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqvw/algebra.hpp"
#include "pqvw/bracket.hpp"
#include "pqvw/errors.hpp"
#include "pqvw/identities.hpp"
#include "pqvw/parallel.hpp"
#include "pqvw/ring.hpp"

namespace pqvw {

/// Strictly increasing list of generator indices.
class IndexSet
{
public:
  IndexSet() = default;

  explicit IndexSet(std::vector<GenIndex> v) : m_elems(std::move(v))
  {
    std::sort(m_elems.begin(), m_elems.end());
    if (std::adjacent_find(m_elems.begin(), m_elems.end()) != m_elems.end())
      throw AlgebraError("index set has a repeated index");
  }

  IndexSet(std::initializer_list<GenIndex> v) : IndexSet(std::vector<GenIndex>(v)) {}

  const std::vector<GenIndex>& elements() const { return m_elems; }
  std::size_t size() const { return m_elems.size(); }
  GenIndex operator[](std::size_t i) const { return m_elems[i]; }
  auto begin() const { return m_elems.begin(); }
  auto end() const { return m_elems.end(); }

  bool contains(GenIndex m) const { return std::binary_search(m_elems.begin(), m_elems.end(), m); }

  /// Position of m, or -1.
  int position(GenIndex m) const
  {
    auto it = std::lower_bound(m_elems.begin(), m_elems.end(), m);
    return it != m_elems.end() && *it == m ? static_cast<int>(it - m_elems.begin()) : -1;
  }

  GenIndex sum() const { return index_sum(m_elems); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

private:
  std::vector<GenIndex> m_elems;
};

inline std::string to_string(const IndexSet& s)
{
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? ", " : "") + std::to_string(s[i]);
  return out + "}";
}

struct FiViolation
{
  IndexTuple y;
  IndexTuple x;
  Term residual;
};

/// Verdicts on the span of {L_i : i in S}. Optional fields stay empty when
/// the corresponding check was not reached or does not apply.
struct SubalgebraReport
{
  IndexSet indices;
  int n = 0;
  bool closed = false;
  std::optional<IndexTuple> closure_violation;
  std::optional<bool> fi_pass;
  std::optional<FiViolation> fi_violation;
  std::optional<bool> iso_canonical;
  std::optional<Scalar> coeff;        // the single bracket, |S| = n
  std::optional<GenIndex> target;     // its output index
  std::optional<GenIndex> ideal_at;   // t with span{L_t} an ideal
  std::optional<bool> symmetric;      // matrix test, |S| = n + 1

  bool is_subalgebra() const { return closed && fi_pass.value_or(false); }
};

namespace detail {

// Calls fn(positions) for every k-subset of {0..size-1}, lexicographically.
template <class Fn>
void for_each_combination(int size, int k, Fn&& fn)
{
  if (k < 0 || k > size)
    return;
  std::vector<int> pos(k);
  std::iota(pos.begin(), pos.end(), 0);
  for (;;) {
    fn(static_cast<const std::vector<int>&>(pos));
    int i = k - 1;
    while (i >= 0 && pos[i] == size - k + i)
      --i;
    if (i < 0)
      return;
    ++pos[i];
    for (int j = i + 1; j < k; ++j)
      pos[j] = pos[j - 1] + 1;
  }
}

// Odometer over S^len; fn returns false to stop.
template <class Fn>
bool for_each_tuple(const IndexSet& s, int len, Fn&& fn)
{
  std::vector<int> pos(len, 0);
  IndexTuple t(len, s.size() ? s[0] : 0);
  const int base = static_cast<int>(s.size());
  if (base == 0)
    return true;
  for (;;) {
    if (!fn(static_cast<const IndexTuple&>(t)))
      return false;
    int i = len - 1;
    while (i >= 0 && pos[i] == base - 1) {
      pos[i] = 0;
      t[i] = s[0];
      --i;
    }
    if (i < 0)
      return true;
    t[i] = s[++pos[i]];
  }
}

inline void require_arity(const IndexSet& s, int n)
{
  if (n < 3)
    throw BadArity("subalgebra checks need n >= 3");
  if (s.size() < static_cast<std::size_t>(n))
    throw BadArity("index set " + to_string(s) + " is smaller than the arity " + std::to_string(n));
}

} // namespace detail

/// Every n-subset T of S has a zero bracket or sum(T) in S.
inline SubalgebraReport closure_check(const IndexSet& s, int n)
{
  detail::require_arity(s, n);
  SubalgebraReport rep;
  rep.indices = s;
  rep.n = n;
  rep.closed = true;
  IndexTuple t(n);
  detail::for_each_combination(static_cast<int>(s.size()), n, [&](const std::vector<int>& pos) {
    if (!rep.closed)
      return;
    for (int i = 0; i < n; ++i)
      t[i] = s[pos[i]];
    Term b = bracket(t);
    if (!b.is_zero() && !s.contains(b.index)) {
      rep.closed = false;
      rep.closure_violation = t;
    }
  });
  if (s.size() == static_cast<std::size_t>(n)) {
    Term b = bracket(s.elements());
    rep.coeff = b.coeff;
    rep.target = b.index;
  }
  return rep;
}

/// Closure, then FI for every Y in S^{n-1} and X in S^n (repetition allowed).
inline SubalgebraReport fi_check_span(const IndexSet& s, int n)
{
  SubalgebraReport rep = closure_check(s, n);
  if (!rep.closed)
    return rep;
  rep.fi_pass = true;
  detail::for_each_tuple(s, n - 1, [&](const IndexTuple& y) {
    return detail::for_each_tuple(s, n, [&](const IndexTuple& x) {
      Term r = fi_residual(n, y, x);
      if (r.is_zero())
        return true;
      rep.fi_pass = false;
      rep.fi_violation = FiViolation{y, x, r};
      return false;
    });
  });
  return rep;
}

/// {-k+1, ..., k} for n = 2k, {-k, ..., k} for n = 2k+1.
inline IndexSet canonical_basis(int n)
{
  if (n < 3)
    throw BadArity("canonical subalgebras are defined for n >= 3");
  const int k = n / 2;
  std::vector<GenIndex> v(n);
  std::iota(v.begin(), v.end(), n % 2 ? -k : -k + 1);
  return IndexSet(std::move(v));
}

namespace detail {

using PolyMatrix = std::vector<std::vector<LPoly>>;

// Laplace expansion along the first row.
inline LPoly laplace_det(const PolyMatrix& m)
{
  const std::size_t n = m.size();
  if (n == 1)
    return m[0][0];
  LPoly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero())
      continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<LPoly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j)
          row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    LPoly term = m[0][j] * laplace_det(minor);
    det = j % 2 ? det - term : det + term;
  }
  return det;
}

// Determinant matrix of the canonical bracket, written row by row:
//   n = 2k:   row t is p^{-(2k-2-t) i} q^{t i}, i = -k+1 .. k
//   n = 2k+1: row t is p^{-(2k-t) i} q^{t i},   i = -k .. k
inline PolyMatrix canonical_matrix(int n)
{
  const int k = n / 2;
  const int top = n % 2 ? 2 * k : 2 * k - 2;
  const int first = n % 2 ? -k : -k + 1;
  PolyMatrix m(n);
  for (int t = 0; t < n; ++t)
    for (int c = 0; c < n; ++c) {
      const int i = first + c;
      m[t].push_back(pq_monomial(-(top - t) * i, t * i));
    }
  return m;
}

} // namespace detail

/// Structure constant of the canonical n-dimensional subalgebra.
///
/// Built from its own determinant matrix and cross-checked against the general
/// closed form. Throws ZeroCoefficient if it vanishes.
inline Scalar canonical_coeff(int n)
{
  const IndexSet basis = canonical_basis(n);
  const int k = n / 2;
  LPoly det = detail::laplace_det(detail::canonical_matrix(n));
  auto quot = det.try_divide(PQRing::denominator().pow(n - 1));
  if (!quot)
    throw NotDivisible("canonical determinant not divisible by (q - p^-1)^" + std::to_string(n - 1));
  // The output index is k for even n and 0 for odd n.
  const int e = n % 2 ? 0 : k * k - k;
  Scalar coeff(quot->times_monomial({e, -e}, Rat(bracket_sign(n))));
  if (coeff.is_zero())
    throw ZeroCoefficient("canonical " + std::to_string(n) + "-bracket vanishes");
  Term general = bracket(basis.elements());
  if (general.coeff != coeff || general.index != (n % 2 ? 0 : k))
    throw AlgebraError("canonical coefficient disagrees with the general closed form for n = " +
                       std::to_string(n));
  return coeff;
}

/// The span has exactly one nonzero bracket, onto a basis line: after
/// rescaling L_target to B_1 this is [B_1, ..., B_n] = B_1.
struct IsoVerdict
{
  bool pass = false;
  GenIndex target = 0;
  Scalar coeff;
};

inline IsoVerdict iso_canonical_check(const IndexSet& s, int n)
{
  if (s.size() != static_cast<std::size_t>(n))
    throw BadArity("iso_canonical_check needs exactly n indices");
  IsoVerdict v;
  if (!closure_check(s, n).closed)
    return v;
  Term b = bracket(s.elements());
  v.target = b.index;
  v.coeff = b.coeff;
  v.pass = !b.is_zero() && s.contains(b.index);
  return v;
}

/// Columns are L^j = (-1)^{n+j+1} [all basis elements but the j-th] (j from 1),
/// written in the basis of S.
struct FMatrix
{
  IndexSet basis;
  std::vector<std::vector<Scalar>> entries; // entries[row][column]
  bool symmetric = true;
};

inline FMatrix filippov_matrix(const IndexSet& s, int n)
{
  if (n < 3 || s.size() != static_cast<std::size_t>(n + 1))
    throw BadArity("filippov_matrix needs n + 1 indices");
  FMatrix m;
  m.basis = s;
  m.entries.assign(n + 1, std::vector<Scalar>(n + 1));
  IndexTuple rest(n);
  for (int j = 0; j <= n; ++j) {
    for (int a = 0, r = 0; a <= n; ++a)
      if (a != j)
        rest[r++] = s[a];
    Term b = bracket(rest);
    const int row = s.position(b.index);
    if (b.is_zero() || row < 0)
      continue;
    // 1-based column j + 1: (-1)^{n + j + 2}.
    m.entries[row][j] = (n + j) % 2 ? -b.coeff : b.coeff;
  }
  for (int r = 0; r <= n && m.symmetric; ++r)
    for (int c = r + 1; c <= n; ++c)
      if (m.entries[r][c] != m.entries[c][r]) {
        m.symmetric = false;
        break;
      }
  return m;
}

/// span{L_t} is an ideal of the span of S: every bracket with an argument L_t
/// and the rest from S lands in span{L_t}. Tuples with a repeated argument
/// vanish, so n-subsets containing t cover everything.
inline bool ideal_check(const IndexSet& s, int n, GenIndex t)
{
  detail::require_arity(s, n);
  const int tp = s.position(t);
  if (tp < 0)
    return false;
  bool ok = true;
  IndexTuple tuple(n);
  detail::for_each_combination(static_cast<int>(s.size()), n, [&](const std::vector<int>& pos) {
    if (!ok || std::find(pos.begin(), pos.end(), tp) == pos.end())
      return;
    for (int i = 0; i < n; ++i)
      tuple[i] = s[pos[i]];
    Term b = bracket(tuple);
    if (!b.is_zero() && b.index != t)
      ok = false;
  });
  return ok;
}

/// Closure, FI, isomorphism type and ideal for an n-element set; closure, FI
/// and the matrix test for an (n+1)-element set.
inline SubalgebraReport analyze(const IndexSet& s, int n)
{
  SubalgebraReport rep = fi_check_span(s, n);
  if (s.size() == static_cast<std::size_t>(n)) {
    if (rep.closed) {
      IsoVerdict iso = iso_canonical_check(s, n);
      rep.iso_canonical = iso.pass;
      if (iso.pass && ideal_check(s, n, iso.target))
        rep.ideal_at = iso.target;
    }
  } else if (s.size() == static_cast<std::size_t>(n + 1) && rep.closed) {
    rep.symmetric = filippov_matrix(s, n).symmetric;
  }
  return rep;
}

struct SearchResult
{
  int n = 0;
  int window = 0;
  int max_dim = 0;
  std::size_t candidates = 0;            // n-element sets examined
  std::size_t larger_candidates = 0;     // (n+1)-element sets examined
  std::vector<SubalgebraReport> found;   // n-dimensional subalgebras
  std::vector<SubalgebraReport> larger;  // (n+1)-dimensional ones; expected empty
  std::vector<SubalgebraReport> closed_larger; // closed (n+1)-sets, for the criteria cross-check

  bool bound_holds() const { return larger.empty(); }
};

/// All index sets of size n (and n + 1 when max_dim = n + 1) within [-W, W],
/// in lexicographic order.
inline std::vector<IndexSet> index_sets(int window, int size)
{
  std::vector<IndexSet> out;
  detail::for_each_combination(2 * window + 1, size, [&](const std::vector<int>& pos) {
    std::vector<GenIndex> v(size);
    for (int i = 0; i < size; ++i)
      v[i] = pos[i] - window;
    out.emplace_back(std::move(v));
  });
  return out;
}

inline SearchResult search(int window, int n, int max_dim, unsigned workers = 1)
{
  if (n < 3)
    throw BadArity("search needs n >= 3");
  if (max_dim != n && max_dim != n + 1)
    throw BadArity("max_dim must be n or n + 1");
  if (window < 0)
    throw AlgebraError("window must be non-negative");
  SignTable::instance().prime(n);

  SearchResult res;
  res.n = n;
  res.window = window;
  res.max_dim = max_dim;
  auto run = [&](int size) {
    auto sets = index_sets(window, size);
    auto reports = parallel_map(sets, [n](const IndexSet& s) { return analyze(s, n); }, workers);
    return std::pair{sets.size(), std::move(reports)};
  };

  auto [count, reports] = run(n);
  res.candidates = count;
  for (auto& r : reports)
    if (r.is_subalgebra())
      res.found.push_back(std::move(r));

  if (max_dim == n + 1) {
    auto [count1, reports1] = run(n + 1);
    res.larger_candidates = count1;
    for (auto& r : reports1) {
      if (!r.closed)
        continue;
      if (r.is_subalgebra())
        res.larger.push_back(r);
      res.closed_larger.push_back(std::move(r));
    }
  }
  return res;
}

} // namespace pqvw
