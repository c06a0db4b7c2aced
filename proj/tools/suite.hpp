#pragma once

// Sweeps behind the `verify`, `oracle-check` and `subalgebra` commands, and
// the criterion list run by `verify all`.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pqvw/algebra.hpp"
#include "pqvw/identities.hpp"
#include "pqvw/oracle.hpp"
#include "pqvw/parallel.hpp"
#include "pqvw/subalgebra.hpp"
#include "report.hpp"

namespace pqvw::cli {

// --- tuple sources -------------------------------------------------------------

/// Every tuple in [lo, hi]^len, lexicographically.
inline std::vector<IndexTuple> cube(int lo, int hi, int len)
{
  std::vector<IndexTuple> out;
  IndexTuple t(len, lo);
  for (;;) {
    out.push_back(t);
    int i = len - 1;
    while (i >= 0 && t[i] == hi)
      t[i--] = lo;
    if (i < 0)
      return out;
    ++t[i];
  }
}

inline std::vector<IndexTuple> distinct_tuples(int lo, int hi, int len)
{
  std::vector<IndexTuple> out;
  for (auto& t : cube(lo, hi, len))
    if (!has_repeat(t))
      out.push_back(std::move(t));
  return out;
}

/// count tuples in [lo, hi]^len drawn from mt19937_64(seed). The reduction is
/// spelled out so the sample does not depend on the standard library.
inline std::vector<IndexTuple> sampled_tuples(std::uint64_t seed, int count, int lo, int hi, int len)
{
  std::mt19937_64 rng(seed);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  std::vector<IndexTuple> out(count, IndexTuple(len));
  for (auto& t : out)
    for (auto& v : t)
      v = lo + static_cast<int>(rng() % span);
  return out;
}

// --- single checks -------------------------------------------------------------

namespace detail {

inline ResultEntry make(std::string kind, Json input)
{
  ResultEntry e;
  e.kind = std::move(kind);
  e.input = std::move(input);
  return e;
}

template <class F>
ResultEntry guarded(std::string kind, Json input, F&& body)
{
  ResultEntry e = make(std::move(kind), std::move(input));
  try {
    body(e);
  } catch (const AlgebraError& ex) {
    e.pass = false;
    e.residual = std::string("error: ") + ex.what();
  }
  return e;
}

inline void set_residual(ResultEntry& e, const std::string& r, bool zero)
{
  e.residual = zero ? "0" : r;
  e.pass = zero != e.expect_nonzero;
}

} // namespace detail

inline ResultEntry check_oscillator()
{
  return detail::guarded("oscillator", Json::object(), [](ResultEntry& e) {
    OscillatorReport r = osc_relations_check();
    const bool zero = r.q_relation.is_zero() && r.p_relation.is_zero();
    e.pass = r.pass();
    e.residual = zero ? (r.pass() ? "0" : "grade mismatch")
                      : r.q_relation.to_string() + " ; " + r.p_relation.to_string();
    if (!r.pass())
      e.detail = {{"lowering_grade", r.lowering_grade}, {"raising_grade", r.raising_grade}};
  });
}

inline ResultEntry check_skew(int n, const IndexTuple& t)
{
  return detail::guarded("skew", {{"n", n}, {"tuple", t}}, [&](ResultEntry& e) {
    IdentityReport r = pqvw::check_skew(t, n);
    detail::set_residual(e, r.residual, r.residual_zero);
  });
}

inline ResultEntry check_sh_jacobi(int n, const IndexTuple& t)
{
  return detail::guarded("sh-jacobi", {{"n", n}, {"tuple", t}}, [&](ResultEntry& e) {
    Scalar r = sh_jacobi_residual(n, t);
    detail::set_residual(e, r.to_string(), r.is_zero());
  });
}

/// FI on (Y, X) = (t[0 .. n-2], t[n-1 .. 2n-2]).
inline ResultEntry check_fi(int n, const IndexTuple& t, bool expect_nonzero)
{
  IndexTuple y(t.begin(), t.begin() + (n - 1)), x(t.begin() + (n - 1), t.end());
  ResultEntry e = detail::make("fi", {{"n", n}, {"y", y}, {"x", x}});
  e.expect_nonzero = expect_nonzero;
  try {
    Term r = fi_residual(n, y, x);
    detail::set_residual(e, r.coeff.to_string() + " L_" + std::to_string(r.index), r.is_zero());
  } catch (const AlgebraError& ex) {
    e.pass = false;
    e.residual = std::string("error: ") + ex.what();
  }
  return e;
}

inline ResultEntry check_fi_counterexample(int n)
{
  ResultEntry e = detail::make("fi-counterexample", {{"n", n}});
  e.expect_nonzero = true;
  try {
    FiCounterexample ce = fi_counterexample_even(n);
    e.input["y"] = ce.y;
    e.input["x"] = ce.x;
    detail::set_residual(e, ce.residual.coeff.to_string() + " L_" + std::to_string(ce.residual.index), false);
  } catch (const AlgebraError& ex) {
    e.pass = false;
    e.residual = std::string("error: ") + ex.what();
  }
  return e;
}

inline ResultEntry check_fi_search(int n, int window)
{
  ResultEntry e = detail::make("fi-search", {{"n", n}, {"window", window}});
  e.expect_nonzero = true;
  auto v = find_fi_violation(n, window);
  if (!v) {
    e.pass = false;
    e.residual = "0";
    return e;
  }
  e.input["y"] = v->y;
  e.input["x"] = v->x;
  detail::set_residual(e, v->residual.coeff.to_string() + " L_" + std::to_string(v->residual.index), false);
  return e;
}

/// The 2-bracket read off the module against its closed form.
inline ResultEntry check_bracket2_oracle(const IndexTuple& t)
{
  return detail::guarded("bracket2-oracle", {{"tuple", t}}, [&](ResultEntry& e) {
    Term oracle = extract_structure_constant(bracket2_def(t[0], t[1]), t[0] + t[1]);
    Term closed = bracket2(t[0], t[1]);
    Scalar diff = oracle.coeff - closed.coeff;
    detail::set_residual(e, diff.to_string(), diff.is_zero() && oracle.index == closed.index);
  });
}

inline ResultEntry check_jacobi2(const IndexTuple& t)
{
  return detail::guarded("pq-jacobi", {{"tuple", t}}, [&](ResultEntry& e) {
    Scalar r = deformed_jacobi2_residual(t[0], t[1], t[2]);
    detail::set_residual(e, r.to_string(), r.is_zero());
  });
}

inline ResultEntry check_q_jacobi(const IndexTuple& t)
{
  return detail::guarded("q-jacobi", {{"tuple", t}}, [&](ResultEntry& e) {
    LevelUniScalar r = q_jacobi2_residual(t[0], t[1], t[2]);
    detail::set_residual(e, r.to_string(), r.is_zero());
  });
}

inline ResultEntry check_classical_jacobi(const IndexTuple& t)
{
  return detail::guarded("classical-jacobi", {{"tuple", t}}, [&](ResultEntry& e) {
    Rat r = classical_jacobi_residual(t[0], t[1], t[2]);
    detail::set_residual(e, r.get_str(), sgn(r) == 0);
  });
}

/// Closed form, fully expanded recursion and one-step recursion agree; for
/// distinct tuples the sign-free closed form differs from the recursion by
/// sign(n), recorded in detail.ratio.
inline ResultEntry check_closed_form(const IndexTuple& t)
{
  const int n = static_cast<int>(t.size());
  return detail::guarded("closed-form", {{"n", n}, {"tuple", t}}, [&](ResultEntry& e) {
    const GenIndex total = index_sum(t);
    Term closed = bracket(t);
    Term recursive = extract_structure_constant(bracketn_def(t), total);
    Term one_step = extract_structure_constant(bracketn_one_step(t), total);
    Scalar d1 = recursive.coeff - closed.coeff;
    Scalar d2 = one_step.coeff - recursive.coeff;
    bool same_index = recursive.is_zero() || recursive.index == total;
    detail::set_residual(e, d1.is_zero() ? d2.to_string() : d1.to_string(),
                         d1.is_zero() && d2.is_zero() && same_index);
    if (!has_repeat(t)) {
      // Column order carries the permutation sign.
      Scalar unsigned_form = closed_form_unsigned(t);
      int ratio = recursive.coeff == unsigned_form ? 1 : recursive.coeff == -unsigned_form ? -1 : 0;
      e.detail = {{"ratio", ratio}};
    }
  });
}

/// p -> q of the 2-bracket is [m - n]_q and its classical value is m - n.
inline ResultEntry check_limit2(const IndexTuple& t)
{
  return detail::guarded("limit2", {{"tuple", t}}, [&](ResultEntry& e) {
    UniScalar u = specialize_pq(bracket2(t[0], t[1]).coeff);
    UniScalar d = u - q_number(t[0] - t[1]);
    Rat c = classical_value(u);
    bool ok = d.is_zero() && c == Rat(t[0] - t[1]);
    e.residual = ok ? "0" : d.to_string() + " ; classical " + c.get_str();
    e.pass = ok;
  });
}

/// p -> q of the closed n-bracket against the recursion evaluated on the
/// module at p = q, P = Q.
inline ResultEntry check_limit_odd(const IndexTuple& t)
{
  const int n = static_cast<int>(t.size());
  return detail::guarded("limit-n", {{"n", n}, {"tuple", t}}, [&](ResultEntry& e) {
    const GenIndex total = index_sum(t);
    ModVector v = word_act(bracketn_def(t));
    LevelUniScalar recursive;
    for (const auto& [s, c] : v)
      if (s == total)
        recursive += specialize_level(c);
    Term closed = bracket(t);
    LevelUniScalar expected = specialize_level(lift(closed.coeff) * action_coefficient(total, 0));
    LevelUniScalar d = recursive - expected;
    detail::set_residual(e, d.to_string(), d.is_zero() && v.size() <= 1);
  });
}

inline ResultEntry check_canonical(int n)
{
  return detail::guarded("canonical", {{"n", n}}, [&](ResultEntry& e) {
    Scalar c = canonical_coeff(n);
    SubalgebraReport r = analyze(canonical_basis(n), n);
    bool ok = r.closed && r.fi_pass.value_or(false) && r.iso_canonical.value_or(false) && !c.is_zero();
    e.pass = ok;
    e.residual = ok ? "0" : "canonical subalgebra check failed";
    e.detail = to_json(r);
  });
}

inline ResultEntry check_search(int window, int n, int max_dim, unsigned workers)
{
  return detail::guarded("subalgebra-search", {{"n", n}, {"window", window}, {"max_dim", max_dim}},
                         [&](ResultEntry& e) {
    SearchResult r = search(window, n, max_dim, workers);
    bool ok = r.bound_holds();
    Json found = Json::array();
    for (const auto& s : r.found) {
      found.push_back(tuple_json(s.indices.elements()));
      ok = ok && s.iso_canonical.value_or(false) && s.ideal_at == s.indices.sum();
    }
    Json closed_larger = Json::array();
    for (const auto& s : r.closed_larger) {
      closed_larger.push_back(to_json(s));
      ok = ok && s.symmetric == s.fi_pass;
    }
    e.pass = ok;
    e.residual = ok ? "0" : "search found a larger subalgebra or an inconsistent candidate";
    e.detail = {{"candidates", r.candidates},
                {"larger_candidates", r.larger_candidates},
                {"found", found},
                {"larger_passing", r.larger.size()},
                {"closed_larger", closed_larger}};
  });
}

inline ResultEntry check_pin(const std::string& name, const std::string& got, const std::string& want)
{
  ResultEntry e = detail::make("pin", {{"name", name}, {"expected", want}});
  e.pass = got == want;
  e.residual = e.pass ? "0" : got;
  return e;
}

/// Runs check over all tuples on the worker pool; results stay in tuple order.
inline std::vector<ResultEntry> sweep(const std::vector<IndexTuple>& tuples,
                                      const std::function<ResultEntry(const IndexTuple&)>& check,
                                      unsigned workers)
{
  return parallel_map(tuples, check, workers);
}

// --- acceptance criteria ---------------------------------------------------------

enum class Level
{
  quick,
  desk
};

struct CriterionOutcome
{
  int id = 0;
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool pass() const { return checks > 0 && failures == 0; }
};

struct SuiteConfig
{
  Level level = Level::desk;
  std::uint64_t seed = 1;
  int samples = 200;
  unsigned workers = 1;
};

namespace detail {

inline void absorb(CriterionOutcome& out, const std::vector<ResultEntry>& es)
{
  for (const auto& e : es) {
    ++out.checks;
    if (!e.pass) {
      if (out.failures++ == 0)
        out.first_failure = e.kind + " " + e.input.dump() + ": " + e.residual;
    }
  }
}

inline void absorb(CriterionOutcome& out, const ResultEntry& e) { absorb(out, std::vector<ResultEntry>{e}); }

inline void fail(CriterionOutcome& out, const std::string& why)
{
  ++out.checks;
  if (out.failures++ == 0)
    out.first_failure = why;
}

} // namespace detail

inline CriterionOutcome criterion_oscillator(const SuiteConfig&)
{
  CriterionOutcome out{1, "oscillator relations", 0, 0, ""};
  detail::absorb(out, check_oscillator());
  return out;
}

inline CriterionOutcome criterion_two_bracket(const SuiteConfig& cfg)
{
  CriterionOutcome out{2, "2-bracket oracle, skew-symmetry, (p,q)-Jacobi", 0, 0, ""};
  const int w2 = cfg.level == Level::desk ? 4 : 2;
  const int w3 = cfg.level == Level::desk ? 3 : 2;
  auto pairs = cube(-w2, w2, 2);
  detail::absorb(out, sweep(pairs, check_bracket2_oracle, cfg.workers));
  detail::absorb(out, sweep(pairs, [](const IndexTuple& t) { return check_skew(2, t); }, cfg.workers));
  detail::absorb(out, sweep(cube(-w3, w3, 3), check_jacobi2, cfg.workers));
  return out;
}

inline CriterionOutcome criterion_closed_form(const SuiteConfig& cfg)
{
  CriterionOutcome out{3, "closed form = recursion = one-step recursion; sign(n)", 0, 0, ""};
  const bool desk = cfg.level == Level::desk;
  SignTable::instance().prime(5);
  struct Range
  {
    int n, lo, hi;
    bool distinct;
  };
  const std::vector<Range> ranges = desk ? std::vector<Range>{{3, -3, 3, false}, {4, -2, 2, true}, {5, -2, 2, true}}
                                         : std::vector<Range>{{3, -2, 2, false}, {4, -1, 2, true}, {5, -2, 2, true}};
  for (const auto& r : ranges) {
    auto tuples = r.distinct ? distinct_tuples(r.lo, r.hi, r.n) : cube(r.lo, r.hi, r.n);
    if (!desk && r.n == 5)
      tuples.resize(24);
    auto es = sweep(tuples, check_closed_form, cfg.workers);
    detail::absorb(out, es);
    std::set<int> ratios;
    for (const auto& e : es)
      if (!e.detail.is_null())
        ratios.insert(e.detail["ratio"].get<int>());
    if (r.n >= 4 && (ratios.size() != 1 || *ratios.begin() != bracket_sign(r.n)))
      detail::fail(out, "sign(" + std::to_string(r.n) + ") is not a single consistent +-1");
    else
      ++out.checks;
  }
  return out;
}

inline CriterionOutcome criterion_sh_jacobi(const SuiteConfig& cfg)
{
  CriterionOutcome out{4, "sh-Jacobi identity", 0, 0, ""};
  const bool desk = cfg.level == Level::desk;
  SignTable::instance().prime(5);
  auto at = [&](int n) { return [n](const IndexTuple& t) { return check_sh_jacobi(n, t); }; };
  detail::absorb(out, sweep(desk ? cube(-2, 2, 5) : cube(-1, 1, 5), at(3), cfg.workers));
  detail::absorb(out, sweep(desk ? cube(-1, 2, 7) : sampled_tuples(cfg.seed, 100, -1, 2, 7), at(4), cfg.workers));
  const int samples = desk ? std::max(cfg.samples, 200) : std::min(cfg.samples, 20);
  detail::absorb(out, sweep(sampled_tuples(cfg.seed, samples, -2, 2, 9), at(5), cfg.workers));
  return out;
}

inline CriterionOutcome criterion_not_n_lie(const SuiteConfig&)
{
  CriterionOutcome out{5, "FI violations", 0, 0, ""};
  detail::absorb(out, check_fi_search(3, 2));
  detail::absorb(out, check_fi_counterexample(4));
  detail::absorb(out, check_fi_counterexample(6));
  return out;
}

inline CriterionOutcome criterion_limits(const SuiteConfig& cfg)
{
  CriterionOutcome out{6, "p -> q and classical limits", 0, 0, ""};
  const bool desk = cfg.level == Level::desk;
  const int w = desk ? 5 : 3;
  detail::absorb(out, sweep(cube(-w, w, 2), check_limit2, cfg.workers));
  detail::absorb(out, sweep(distinct_tuples(-2, 2, 3), check_limit_odd, cfg.workers));
  auto five = distinct_tuples(-2, 2, 5);
  if (!desk)
    five.resize(12);
  detail::absorb(out, sweep(five, check_limit_odd, cfg.workers));
  return out;
}

inline CriterionOutcome criterion_subalgebras(const SuiteConfig& cfg)
{
  CriterionOutcome out{7, "canonical subalgebras and bounded search", 0, 0, ""};
  const bool desk = cfg.level == Level::desk;
  for (int n = 3; n <= (desk ? 5 : 4); ++n)
    detail::absorb(out, check_canonical(n));
  detail::absorb(out, check_search(desk ? 3 : 2, 3, 4, cfg.workers));
  return out;
}

inline CriterionOutcome criterion_pins(const SuiteConfig&)
{
  CriterionOutcome out{8, "regression pins", 0, 0, ""};
  Term b = bracket3_closed(0, 1, 2);
  detail::absorb(out, check_pin("bracket3_closed(0,1,2)", b.coeff.to_string(), "q^-2 - p^2"));
  detail::absorb(out, check_pin("bracket3_closed(0,1,2).index", std::to_string(b.index), "3"));
  detail::absorb(out, check_pin("pq_number(-1)", pq_number(-1).to_string(), "-p*q^-1"));
  return out;
}

using CriterionRunner = CriterionOutcome (*)(const SuiteConfig&);

inline const std::vector<CriterionRunner>& criteria()
{
  static const std::vector<CriterionRunner> all = {
      criterion_oscillator, criterion_two_bracket, criterion_closed_form, criterion_sh_jacobi,
      criterion_not_n_lie,  criterion_limits,      criterion_subalgebras, criterion_pins};
  return all;
}

inline ResultEntry entry(const CriterionOutcome& c)
{
  ResultEntry e;
  e.kind = "criterion";
  e.input = {{"id", c.id}, {"name", c.name}, {"checks", c.checks}};
  e.pass = c.pass();
  e.residual = c.failures ? c.first_failure : "0";
  if (c.failures)
    e.detail = {{"failures", c.failures}};
  return e;
}

} // namespace pqvw::cli
