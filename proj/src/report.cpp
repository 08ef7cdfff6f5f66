#include "gdl/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>

namespace gdl::report {

namespace {

std::string fmt17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep a float looking like a float on read-back
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << "," << nl;
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << nl << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << fmt17(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

json params_json(const std::vector<std::pair<std::string, std::string>>& params) {
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = v;
  return p;
}

}  // namespace

json complex_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json to_json(const identities::IdentityReport& r) {
  json m = json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  json j{{"name", r.name},          {"lhs", complex_json(r.lhs)}, {"rhs", complex_json(r.rhs)},
         {"residual", r.residual},  {"budget", r.budget},         {"tolerance", r.tolerance},
         {"params", params_json(r.params)}, {"metrics", m},       {"passed", r.passed}};
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

identities::IdentityReport identity_from_json(const json& j) {
  identities::IdentityReport r;
  r.name = j.at("name").get<std::string>();
  auto cx = [](const json& c) {
    auto part = [](const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
    return cplx(part(c.at("re")), part(c.at("im")));
  };
  auto num = [](const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
  r.lhs = cx(j.at("lhs"));
  r.rhs = cx(j.at("rhs"));
  r.residual = num(j.at("residual"));
  r.budget = num(j.at("budget"));
  r.tolerance = num(j.at("tolerance"));
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
    r.params.emplace_back(it.key(), it.value().get<std::string>());
  for (auto it = j.at("metrics").begin(); it != j.at("metrics").end(); ++it) r.metrics.emplace_back(it.key(), num(it.value()));
  if (j.contains("warning")) r.warning = j.at("warning").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  return r;
}

json to_json(const EvalResult& r) {
  json j{{"value", complex_json(r.value)}, {"err", r.err}, {"terms", r.terms}, {"method", r.method}};
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

json to_json(const geodesics::CensusResult& r) {
  json per = json::array();
  for (const auto& d : r.per_delta)
    per.push_back({{"delta", d.delta}, {"h", d.h}, {"t0", d.t0}, {"u0", d.u0}, {"norm0", d.norm0}});
  return {{"x", r.x}, {"psi", r.psi}, {"class_count", r.class_count}, {"per_delta", per}};
}

json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  return {{"name", t.name}, {"columns", t.columns}, {"rows", rows}};
}

Table pgt_table(const std::vector<geodesics::PgtRow>& rows) {
  Table t{"pgt-errors", {"x", "psi", "err", "err_normalized"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.x, r.psi, r.err, r.err_normalized});
  return t;
}

std::string timestamp() {
  std::time_t t = 0;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json envelope(const json& config_echo, const json& reports) {
  return {{"tool_version", kToolVersion}, {"timestamp", timestamp()}, {"config_echo", config_echo}, {"reports", reports}};
}

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  os << "\n";
  return os.str();
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << (std::isfinite(row[i]) ? fmt17(row[i]) : "nan");
    os << "\n";
  }
  return os.str();
}

bool all_passed(const json& reports) {
  for (const auto& r : reports)
    if (r.is_object() && r.contains("passed") && !r.at("passed").get<bool>()) return false;
  return true;
}

}  // namespace gdl::report
