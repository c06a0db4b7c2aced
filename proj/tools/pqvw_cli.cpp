// pqvw: command-line front end.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "suite.hpp"

using namespace pqvw;
using namespace pqvw::cli;

namespace {

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Options
{
  std::string format = "text";
  std::string output;
  unsigned jobs = 1;
  bool timing = false;
  bool verbose = false;

  int n = 3;
  int window = 2;
  std::vector<int> indices;
  int samples = 0;
  std::uint64_t seed = 1;
  std::string level = "desk";
  int max_dim = 0;
  bool even_counterexample = false;
  bool expect_violation = false;
};

void require(bool ok, const std::string& msg)
{
  if (!ok)
    throw UsageError(msg);
}

void require_window(const Options& o)
{
  require(o.window >= 0, "--window must be non-negative");
}

/// Writes to path through a temporary file in the same directory.
void write_atomically(const std::string& path, const std::string& content)
{
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out)
      throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

// text_override replaces the generic text rendering.
int emit(const Options& o, SuiteReport& report, bool verbose_text, double seconds,
         const std::string& text_override = "")
{
  if (o.timing)
    report.set_wall_time(seconds);
  std::string body;
  if (o.format == "json")
    body = report.to_json().dump(2) + "\n";
  else
    body = text_override.empty() ? report.to_text(verbose_text || o.verbose) : text_override;
  if (o.output.empty())
    std::cout << body;
  else
    write_atomically(o.output, body);
  return report.ok() ? 0 : 1;
}

std::string limit_text(const UniScalar& u)
{
  try {
    return classical_value(u).get_str();
  } catch (const PoleAtOne&) {
    return "none (pole at q = 1)";
  }
}

// --- commands ------------------------------------------------------------------

SuiteReport run_bracket(const Options& o, std::string& text)
{
  require(o.n >= 2, "--n must be at least 2");
  require(o.indices.size() == static_cast<std::size_t>(o.n), "bracket needs exactly n indices");
  SignTable::instance().prime(o.n);
  Term b = bracket(o.indices);
  UniScalar u = specialize_pq(b.coeff);
  std::string classical = limit_text(u);

  SuiteReport report("bracket", {{"n", o.n}, {"indices", o.indices}});
  ResultEntry e;
  e.kind = "bracket";
  e.input = {{"n", o.n}, {"tuple", o.indices}};
  e.detail = {{"coeff", b.coeff.to_string()},
              {"index", b.index},
              {"p_to_q", u.to_string()},
              {"classical", classical}};
  report.add(e);
  text = "coefficient: " + b.coeff.to_string() + "\nindex: " + std::to_string(b.index) +
         "\np -> q: " + u.to_string() + "\nclassical: " + classical + "\n";
  return report;
}

std::vector<IndexTuple> window_or_indices(const Options& o, int len)
{
  if (!o.indices.empty()) {
    require(o.indices.size() == static_cast<std::size_t>(len),
            "expected " + std::to_string(len) + " indices, got " + std::to_string(o.indices.size()));
    return {o.indices};
  }
  require_window(o);
  if (o.samples > 0)
    return sampled_tuples(o.seed, o.samples, -o.window, o.window, len);
  return cube(-o.window, o.window, len);
}

Json sweep_params(const Options& o, int len)
{
  Json p = {{"n", o.n}};
  if (!o.indices.empty())
    p["indices"] = o.indices;
  else {
    p["window"] = o.window;
    p["arity"] = len;
    if (o.samples > 0) {
      p["samples"] = o.samples;
      p["seed"] = o.seed;
    }
  }
  return p;
}

SuiteReport run_verify(const std::string& what, const Options& o)
{
  SignTable::instance().prime(std::max(3, std::min(o.n, 8)));
  if (what == "oscillator") {
    SuiteReport r("verify oscillator", Json::object());
    r.add(check_oscillator());
    return r;
  }
  if (what == "skew") {
    require(o.n >= 2, "--n must be at least 2");
    auto tuples = window_or_indices(o, o.n);
    SuiteReport r("verify skew", sweep_params(o, o.n));
    r.add_all(sweep(tuples, [n = o.n](const IndexTuple& t) { return check_skew(n, t); }, o.jobs));
    return r;
  }
  if (what == "sh-jacobi") {
    require(o.n >= 2 && o.n <= 8, "--n must be between 2 and 8");
    auto tuples = window_or_indices(o, 2 * o.n - 1);
    SuiteReport r("verify sh-jacobi", sweep_params(o, 2 * o.n - 1));
    r.add_all(sweep(tuples, [n = o.n](const IndexTuple& t) { return check_sh_jacobi(n, t); }, o.jobs));
    return r;
  }
  if (what == "fi") {
    require(o.n >= 2, "--n must be at least 2");
    if (o.even_counterexample) {
      require(o.n >= 4 && o.n % 2 == 0, "the FI counterexample is built for even n >= 4");
      SuiteReport r("verify fi", {{"n", o.n}, {"even_counterexample", true}});
      r.add(check_fi_counterexample(o.n));
      return r;
    }
    if (!o.indices.empty()) {
      require(o.indices.size() == static_cast<std::size_t>(2 * o.n - 1),
              "fi needs n - 1 indices for Y followed by n for X");
      SuiteReport r("verify fi", {{"n", o.n}, {"indices", o.indices}, {"expect_violation", o.expect_violation}});
      r.add(check_fi(o.n, o.indices, o.expect_violation));
      return r;
    }
    require_window(o);
    SuiteReport r("verify fi", {{"n", o.n}, {"window", o.window}, {"search", true}});
    r.add(check_fi_search(o.n, o.window));
    return r;
  }
  if (what == "jacobi2" || what == "q-jacobi" || what == "classical-jacobi") {
    Options w = o;
    w.n = 2;
    auto tuples = window_or_indices(w, 3);
    Json p = sweep_params(w, 3);
    p.erase("n");
    SuiteReport r("verify " + what, p);
    auto check = what == "jacobi2" ? check_jacobi2 : what == "q-jacobi" ? check_q_jacobi : check_classical_jacobi;
    r.add_all(sweep(tuples, check, o.jobs));
    return r;
  }
  if (what == "closed-form") {
    require(o.n >= 3 && o.n <= 7, "--n must be between 3 and 7");
    auto tuples = window_or_indices(o, o.n);
    SuiteReport r("verify closed-form", sweep_params(o, o.n));
    r.add_all(sweep(tuples, check_closed_form, o.jobs));
    return r;
  }
  if (what == "limits") {
    require_window(o);
    SuiteReport r("verify limits", {{"window", o.window}});
    r.add_all(sweep(cube(-o.window, o.window, 2), check_limit2, o.jobs));
    r.add_all(sweep(distinct_tuples(-2, 2, 3), check_limit_odd, o.jobs));
    return r;
  }
  throw UsageError("unknown verify target: " + what);
}

SuiteReport run_all(const Options& o)
{
  require(o.level == "desk" || o.level == "quick", "--level must be desk or quick");
  SuiteConfig cfg;
  cfg.level = o.level == "desk" ? Level::desk : Level::quick;
  cfg.seed = o.seed;
  cfg.samples = o.samples > 0 ? o.samples : 200;
  cfg.workers = o.jobs;
  SignTable::instance().prime(6);
  SuiteReport r("verify all", {{"level", o.level}, {"seed", cfg.seed}, {"samples", cfg.samples}});
  for (auto run : criteria())
    r.add(entry(run(cfg)));
  return r;
}

SuiteReport run_oracle_check(const Options& o)
{
  require_window(o);
  SignTable::instance().prime(5);
  SuiteReport r("oracle-check", {{"window", o.window}});
  r.add(check_oscillator());
  r.add_all(sweep(cube(-o.window, o.window, 2), check_bracket2_oracle, o.jobs));
  r.add_all(sweep(cube(-o.window, o.window, 3), check_closed_form, o.jobs));
  r.add_all(sweep(distinct_tuples(-o.window, o.window, 4), check_closed_form, o.jobs));
  return r;
}

SuiteReport run_subalgebra(const std::string& what, const Options& o)
{
  require(o.n >= 3 && o.n <= 7, "--n must be between 3 and 7");
  SignTable::instance().prime(o.n);
  if (what == "search") {
    require_window(o);
    const int max_dim = o.max_dim ? o.max_dim : o.n + 1;
    require(max_dim == o.n || max_dim == o.n + 1, "--max-dim must be n or n + 1");
    SuiteReport r("subalgebra search", {{"n", o.n}, {"window", o.window}, {"max_dim", max_dim}});
    r.add(check_search(o.window, o.n, max_dim, o.jobs));
    return r;
  }
  if (what == "canonical") {
    SuiteReport r("subalgebra canonical", {{"n", o.n}});
    r.add(check_canonical(o.n));
    return r;
  }

  require(!o.indices.empty(), "--indices is required");
  IndexSet s;
  try {
    s = IndexSet(o.indices);
  } catch (const AlgebraError& e) {
    throw UsageError(e.what());
  }
  if (what == "check") {
    require(s.size() >= static_cast<std::size_t>(o.n), "need at least n indices");
    SuiteReport r("subalgebra check", {{"n", o.n}, {"indices", s.elements()}});
    SubalgebraReport rep = analyze(s, o.n);
    ResultEntry e;
    e.kind = "subalgebra";
    e.input = {{"n", o.n}, {"indices", s.elements()}};
    // A report, not an assertion: a set that is not a subalgebra is a valid answer.
    e.residual = rep.fi_violation ? rep.fi_violation->residual.coeff.to_string() : "0";
    e.detail = to_json(rep);
    r.add(e);
    return r;
  }
  if (what == "matrix") {
    require(s.size() == static_cast<std::size_t>(o.n + 1), "matrix needs exactly n + 1 indices");
    FMatrix m = filippov_matrix(s, o.n);
    SuiteReport r("subalgebra matrix", {{"n", o.n}, {"indices", s.elements()}});
    Json rows = Json::array();
    for (const auto& row : m.entries) {
      Json jr = Json::array();
      for (const auto& c : row)
        jr.push_back(c.to_string());
      rows.push_back(std::move(jr));
    }
    ResultEntry e;
    e.kind = "filippov-matrix";
    e.input = {{"n", o.n}, {"indices", s.elements()}};
    e.detail = {{"matrix", rows}, {"symmetric", m.symmetric}};
    r.add(e);
    return r;
  }
  throw UsageError("unknown subalgebra command: " + what);
}

void add_sweep_options(CLI::App* sub, Options& o)
{
  sub->add_option("--n", o.n, "Arity of the bracket");
  sub->add_option("--window", o.window, "Index window [-W, W]");
  sub->add_option("--indices", o.indices, "Explicit comma-separated indices")->delimiter(',')->allow_extra_args(false);
  sub->add_option("--samples", o.samples, "Sample this many seeded tuples instead of a full sweep");
  sub->add_option("--seed", o.seed, "Seed for sampled sweeps");
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Exact checks for the (p,q)-deformed Virasoro-Witt n-algebra", "pqvw"};
  app.set_version_flag("--version", std::string(version()));
  app.fallthrough();
  app.require_subcommand(1);

  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output,-o", o.output, "Write the report to this file");
  app.add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", o.timing, "Include wall time in the report");
  app.add_flag("--verbose,-v", o.verbose, "List passing checks too");

  auto* bracket_cmd = app.add_subcommand("bracket", "Structure constant of one bracket");
  add_sweep_options(bracket_cmd, o);

  auto* verify = app.add_subcommand("verify", "Identity sweeps");
  verify->require_subcommand(1);
  std::string verify_target;
  for (const char* name :
       {"skew", "sh-jacobi", "fi", "jacobi2", "q-jacobi", "classical-jacobi", "oscillator", "closed-form", "limits"}) {
    auto* sub = verify->add_subcommand(name);
    add_sweep_options(sub, o);
    sub->callback([&verify_target, name] { verify_target = name; });
    if (std::string(name) == "fi") {
      sub->add_flag("--even-counterexample,--paper-counterexample", o.even_counterexample,
                   "Even-n construction, expected to violate FI");
      sub->add_flag("--expect-violation", o.expect_violation, "The given (Y, X) is expected to violate FI");
    }
  }
  auto* all = verify->add_subcommand("all", "Every acceptance criterion");
  all->add_option("--level", o.level, "desk or quick");
  all->add_option("--seed", o.seed, "Seed for sampled sweeps");
  all->add_option("--samples", o.samples, "Sampled n = 5 sh-Jacobi tuples (at least 200 at desk level)");
  all->callback([&verify_target] { verify_target = "all"; });

  auto* oracle = app.add_subcommand("oracle-check", "Oscillator relations and closed forms against the module");
  oracle->add_option("--window", o.window, "Index window [-W, W]");

  auto* sub = app.add_subcommand("subalgebra", "Subalgebras spanned by generators");
  sub->require_subcommand(1);
  std::string sub_target;
  for (const char* name : {"search", "check", "canonical", "matrix"}) {
    auto* s = sub->add_subcommand(name);
    add_sweep_options(s, o);
    s->callback([&sub_target, name] { sub_target = name; });
    if (std::string(name) == "search")
      s->add_option("--max-dim", o.max_dim, "n or n + 1");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  try {
    if (bracket_cmd->parsed()) {
      std::string text;
      SuiteReport r = run_bracket(o, text);
      return emit(o, r, false, elapsed(), text);
    }
    if (verify->parsed()) {
      if (verify_target == "all") {
        SuiteReport r = run_all(o);
        return emit(o, r, true, elapsed());
      }
      SuiteReport r = run_verify(verify_target, o);
      return emit(o, r, false, elapsed());
    }
    if (oracle->parsed()) {
      SuiteReport r = run_oracle_check(o);
      return emit(o, r, false, elapsed());
    }
    if (sub->parsed()) {
      SuiteReport r = run_subalgebra(sub_target, o);
      return emit(o, r, true, elapsed());
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const BadArity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
