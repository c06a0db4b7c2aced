#pragma once

// Run reports for the command-line tool: one entry per check, rendered as
// JSON ({version, command, params, results, summary}) or as plain text.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqvw/identities.hpp"
#include "pqvw/subalgebra.hpp"

namespace pqvw::cli {

using Json = nlohmann::ordered_json;

inline const char* version()
{
#ifdef PQVW_VERSION
  return PQVW_VERSION;
#else
  return "unknown";
#endif
}

struct ResultEntry
{
  std::string kind;
  Json input = Json::object();
  std::string residual = "0";
  bool pass = true;
  bool expect_nonzero = false; // expected-fail check: passes on a nonzero residual
  Json detail;                 // optional extra fields
};

inline Json tuple_json(std::span<const GenIndex> t) { return Json(std::vector<GenIndex>(t.begin(), t.end())); }

inline Json to_json(const IdentityReport& r)
{
  Json j;
  j["identity"] = r.identity;
  j["n"] = r.n;
  j["tuple"] = tuple_json(r.tuple);
  j["residual"] = r.residual;
  j["verdict"] = r.pass() ? "pass" : "fail";
  return j;
}

inline ResultEntry entry(const IdentityReport& r)
{
  ResultEntry e;
  e.kind = r.identity;
  e.input["n"] = r.n;
  e.input["tuple"] = tuple_json(r.tuple);
  e.residual = r.residual;
  e.pass = r.pass();
  e.expect_nonzero = !r.expect_zero;
  return e;
}

inline Json to_json(const SubalgebraReport& r)
{
  Json j;
  j["indices"] = tuple_json(r.indices.elements());
  j["closed"] = r.closed;
  if (r.closure_violation)
    j["closure_violation"] = tuple_json(*r.closure_violation);
  j["fi_pass"] = r.fi_pass ? Json(*r.fi_pass) : Json(nullptr);
  if (r.fi_violation) {
    j["fi_violation"] = {{"y", tuple_json(r.fi_violation->y)},
                         {"x", tuple_json(r.fi_violation->x)},
                         {"residual", r.fi_violation->residual.coeff.to_string()},
                         {"index", r.fi_violation->residual.index}};
  }
  j["iso_canonical"] = r.iso_canonical ? Json(*r.iso_canonical) : Json(nullptr);
  j["coeff"] = r.coeff ? Json(r.coeff->to_string()) : Json(nullptr);
  if (r.target)
    j["target"] = *r.target;
  j["ideal_at"] = r.ideal_at ? Json(*r.ideal_at) : Json(nullptr);
  if (r.symmetric)
    j["symmetric"] = *r.symmetric;
  return j;
}

class SuiteReport
{
public:
  SuiteReport(std::string command, Json params) : m_command(std::move(command)), m_params(std::move(params)) {}

  void add(ResultEntry e) { m_results.push_back(std::move(e)); }

  void add_all(std::vector<ResultEntry> es)
  {
    for (auto& e : es)
      m_results.push_back(std::move(e));
  }

  void set_wall_time(double seconds) { m_wall = seconds; }

  const std::vector<ResultEntry>& results() const { return m_results; }

  std::size_t passed() const
  {
    std::size_t k = 0;
    for (const auto& e : m_results)
      k += e.pass;
    return k;
  }

  std::size_t failed() const { return m_results.size() - passed(); }
  bool ok() const { return failed() == 0; }

  Json to_json() const
  {
    Json j;
    j["version"] = version();
    j["command"] = m_command;
    j["params"] = m_params;
    Json rs = Json::array();
    for (const auto& e : m_results) {
      Json r;
      r["kind"] = e.kind;
      r["input"] = e.input;
      r["residual"] = e.residual;
      r["verdict"] = e.pass ? "pass" : "fail";
      if (e.expect_nonzero)
        r["expect"] = "nonzero";
      if (!e.detail.is_null())
        r["detail"] = e.detail;
      rs.push_back(std::move(r));
    }
    j["results"] = std::move(rs);
    j["summary"] = {{"pass", passed()}, {"fail", failed()}};
    if (m_wall)
      j["wall_time_s"] = *m_wall;
    return j;
  }

  /// Failing and expected-fail entries always; every entry when verbose.
  std::string to_text(bool verbose) const
  {
    std::ostringstream os;
    os << "pqvw " << version() << "  " << m_command << "  " << m_params.dump() << "\n";
    for (const auto& e : m_results) {
      if (!verbose && e.pass && !e.expect_nonzero)
        continue;
      os << (e.pass ? "PASS " : "FAIL ") << e.kind << " " << e.input.dump();
      if (e.expect_nonzero)
        os << " (expected nonzero)";
      os << "\n  residual: " << e.residual << "\n";
      if (!e.detail.is_null())
        os << "  " << e.detail.dump() << "\n";
    }
    os << "summary: " << passed() << " passed, " << failed() << " failed";
    if (m_wall)
      os << ", " << *m_wall << " s";
    os << "\n";
    return os.str();
  }

private:
  std::string m_command;
  Json m_params;
  std::vector<ResultEntry> m_results;
  std::optional<double> m_wall;
};

} // namespace pqvw::cli
