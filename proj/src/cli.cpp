#include "gdl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gdl/arith.hpp"
#include "gdl/geodesics.hpp"
#include "gdl/glfunc.hpp"
#include "gdl/identities.hpp"
#include "gdl/specfun.hpp"
#include "gdl/transforms.hpp"

namespace gdl::cli {

using report::json;
using transforms::WindowSpec;

namespace {

struct HelpRequested {
  std::string text;
};

const std::map<std::string, std::set<std::string>> kCommands = {
    {"check",
     {"selberg", "permutation", "main-term", "lerch-moment", "convolution", "fe", "lerch-fe", "h-zero",
      "transforms-cross"}},
    {"geodesics", {"census", "errors"}},
    {"moments", {"t13", "t14", "windowed"}},
    {"eval", {"lvalue", "kloosterman", "rho", "h", "g", "f"}},
};

// --- value parsing ---------------------------------------------------------

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "': expected a number, got '" + v + "'");
  }
}

arith::i64 to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 9e15) throw ConfigError("parameter '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<arith::i64>(d);
}

// "a", "a+bi", "a-bi", "bi"
cplx to_complex(const std::string& key, std::string v) {
  v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
  if (v.empty()) throw ConfigError("parameter '" + key + "': empty value");
  if (v.back() != 'i') return to_double(key, v);
  const std::string body = v.substr(0, v.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
  auto imag_of = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return to_double(key, t);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {to_double(key, body.substr(0, split)), imag_of(body.substr(split))};
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

class Params {
 public:
  explicit Params(const RunConfig& cfg) : cfg_(cfg) {}

  std::string str(const std::string& key) const {
    auto it = cfg_.params.find(key);
    if (it != cfg_.params.end()) return it->second;
    const auto& d = defaults();
    auto sp = d.find(cfg_.name + "." + key);
    if (sp != d.end()) return sp->second;
    auto gen = d.find(key);
    if (gen != d.end()) return gen->second;
    throw ConfigError("missing parameter '" + key + "'");
  }
  bool has(const std::string& key) const {
    if (cfg_.params.count(key)) return true;
    const auto& d = defaults();
    return d.count(cfg_.name + "." + key) || d.count(key);
  }
  double real(const std::string& key) const { return to_double(key, str(key)); }
  arith::i64 integer(const std::string& key) const { return to_int(key, str(key)); }
  cplx complex(const std::string& key) const { return to_complex(key, str(key)); }
  WindowSpec window() const { return WindowSpec::parse(str("window")); }
  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& v : split_list(str(key))) out.push_back(to_double(key, v));
    return out;
  }
  std::vector<arith::i64> integers(const std::string& key) const {
    std::vector<arith::i64> out;
    for (const auto& v : split_list(str(key))) out.push_back(to_int(key, v));
    return out;
  }
  bool flag(const std::string& key) const {
    const std::string v = has(key) ? str(key) : "false";
    return v == "1" || v == "true" || v == "yes" || v == "on";
  }

 private:
  const RunConfig& cfg_;
};

identities::IdentityReport max_residual_report(const std::string& name, double residual, double tol,
                                               std::vector<std::pair<std::string, std::string>> params) {
  identities::IdentityReport r;
  r.name = name;
  r.residual = residual;
  r.tolerance = tol;
  r.params = std::move(params);
  r.settle();
  return r;
}

json eval_json(const std::string& name, const EvalResult& e, std::vector<std::pair<std::string, std::string>> params) {
  json j{{"name", name}};
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  const json body = report::to_json(e);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

transforms::GMethod g_method(const std::string& m) {
  if (m == "integral") return transforms::GMethod::integral;
  if (m == "hypergeometric") return transforms::GMethod::hypergeometric;
  throw ConfigError("parameter 'method': expected integral or hypergeometric");
}

transforms::HMethod h_method(const std::string& m) {
  if (m == "integral") return transforms::HMethod::integral;
  if (m == "hypergeometric") return transforms::HMethod::hypergeometric;
  if (m == "closed-s1") return transforms::HMethod::closed_s1;
  throw ConfigError("parameter 'method': expected integral, hypergeometric or closed-s1");
}

int small_int(const std::string& key, arith::i64 v) {
  if (v < 1 || v > 1'000'000) throw ConfigError("parameter '" + key + "' out of range");
  return static_cast<int>(v);
}

// --- commands --------------------------------------------------------------

void run_check(const RunConfig& cfg, const Params& p, const ExecContext& ctx, RunOutcome& out) {
  const std::string& n = cfg.name;
  identities::IdentityReport r;
  if (n == "selberg" || n == "permutation") {
    const arith::i64 mmax = p.integer("mmax"), qmax = p.integer("qmax");
    double worst = 0.0;
    for (arith::i64 q = 1; q <= qmax; ++q)
      for (arith::i64 m = 1; m <= mmax; ++m)
        for (arith::i64 a = 1; a <= mmax; ++a)
          for (arith::i64 b = 1; b <= mmax; ++b) {
            if (n == "selberg") {
              worst = std::max(worst, arith::selberg_residual(m, a, b, q));
            } else {
              const cplx base = arith::gen_kloosterman(m, a, b, q).value;
              for (const auto& v : {arith::gen_kloosterman(a, m, b, q).value, arith::gen_kloosterman(b, a, m, q).value,
                                    arith::gen_kloosterman(m, b, a, q).value})
                worst = std::max(worst, std::abs(v - base));
            }
          }
    r = max_residual_report(n, worst, p.real("tol"), {{"mmax", std::to_string(mmax)}, {"qmax", std::to_string(qmax)}});
  } else if (n == "main-term") {
    r = identities::main_term_identity(p.complex("s"), p.integer("l"), p.integer("qmax"), p.real("tol"));
  } else if (n == "lerch-moment") {
    r = identities::lerch_moment_identity(p.complex("s"), p.complex("alpha"), p.integer("l"), p.integer("qmax"),
                                          p.real("tol"), ctx);
  } else if (n == "convolution") {
    r = identities::convolution_residual(p.window(), p.complex("s"), p.integer("l"), p.integer("nmax"),
                                         p.integer("qmax"), p.real("tol"), ctx);
  } else if (n == "fe") {
    const cplx s = p.complex("s");
    const auto ns = p.integers("n");
    const auto res = parallel_map<double>(ctx, ns.size(), [&](std::size_t i) { return glfunc::fe_residual(ns[i], s); });
    r = max_residual_report("fe", *std::max_element(res.begin(), res.end()), p.real("tol"),
                            {{"s", p.str("s")}, {"n", p.str("n")}});
  } else if (n == "lerch-fe") {
    const double res = specfun::lerch_fe_residual(p.real("beta"), p.complex("s"));
    r = max_residual_report("lerch-fe", res, p.real("tol"), {{"beta", p.str("beta")}, {"s", p.str("s")}});
  } else if (n == "h-zero") {
    const EvalResult e = transforms::h_integral_zero(p.window());
    r = max_residual_report("h-zero", std::abs(e.value), p.real("tol"), {{"window", p.window().to_string()}});
    r.lhs = e.value;
    r.budget = e.err;
    r.warning = e.warning;
    r.settle();
  } else if (n == "transforms-cross") {
    const WindowSpec w = p.window();
    const cplx s = p.complex("s");
    const int l = small_int("l", p.integer("l")), k = small_int("k", p.integer("k"));
    const double rr = p.real("r");
    const EvalResult gi = transforms::g_weight(w, s, l, k, transforms::GMethod::integral);
    const EvalResult gh = transforms::g_weight(w, s, l, k, transforms::GMethod::hypergeometric);
    const EvalResult hi = transforms::h_weight(w, s, l, rr, transforms::HMethod::integral);
    const EvalResult hh = transforms::h_weight(w, s, l, rr, transforms::HMethod::hypergeometric);
    double worst = std::max(std::abs(gi.value - gh.value), std::abs(hi.value - hh.value));
    identities::IdentityReport rep;
    rep.metrics = {{"g_diff", std::abs(gi.value - gh.value)}, {"h_diff", std::abs(hi.value - hh.value)}};
    if (s == cplx(1.0, 0.0) && l == 1) {
      const EvalResult hc = transforms::h_weight(w, s, l, rr, transforms::HMethod::closed_s1);
      rep.metrics.emplace_back("h_closed_diff", std::abs(hc.value - hh.value));
      worst = std::max(worst, std::abs(hc.value - hh.value));
    }
    rep.name = "transforms-cross";
    rep.lhs = hi.value;
    rep.rhs = hh.value;
    rep.residual = worst;
    rep.budget = gi.err + gh.err + hi.err + hh.err;
    rep.tolerance = p.real("tol");
    rep.params = {{"window", w.to_string()}, {"s", p.str("s")}, {"l", std::to_string(l)}, {"k", std::to_string(k)},
                  {"r", p.str("r")}};
    rep.settle();
    r = rep;
  }
  out.reports.push_back(report::to_json(r));
}

void run_geodesics(const RunConfig& cfg, const Params& p, const ExecContext& ctx, RunOutcome& out) {
  if (cfg.name == "census") {
    const double x = p.real("x");
    const auto census = geodesics::psi_direct(x, ctx);
    json j{{"name", "census"}};
    const json body = report::to_json(census);
    for (auto& [k, v] : body.items()) j[k] = v;
    if (p.flag("compare")) {
      const double via = geodesics::psi_via_l(x, ctx);
      const double rel = std::abs(census.psi - via) / std::max(1.0, census.psi);
      j["psi_via_l"] = via;
      j["residual"] = rel;
      j["tolerance"] = p.real("tol");
      j["passed"] = rel <= p.real("tol");
    }
    out.reports.push_back(j);
  } else {
    const auto table = report::pgt_table(geodesics::pgt_error_table(p.reals("xs"), ctx));
    out.reports.push_back(report::to_json(table));
    out.table = table;
  }
}

void run_moments(const RunConfig& cfg, const Params& p, const ExecContext& ctx, RunOutcome& out) {
  if (cfg.name == "t13") {
    identities::MomentConfig mc;
    mc.theta = p.real("theta");
    const auto xs = p.reals("X");
    report::Table table{"t13", {"X", "lhs", "main_terms", "relative_error", "normalized_residual"}, {}};
    for (double X : xs) {
      const auto r = identities::t13_check(X, mc, ctx);
      out.reports.push_back(report::to_json(r));
      table.rows.push_back({X, r.lhs.real(), r.rhs.real(), r.metrics[0].second, r.metrics[1].second});
    }
    out.reports.push_back(report::to_json(identities::t13_trend(xs, mc, p.real("tol"), ctx)));
    out.table = table;
  } else if (cfg.name == "t14") {
    const auto xs = p.reals("X");
    std::vector<double> ts;
    if (p.has("T")) ts = p.reals("T");
    if (!ts.empty() && ts.size() != xs.size()) throw ConfigError("parameter 'T': one value per X expected");
    report::Table table{"t14", {"X", "T", "sum", "ratio"}, {}};
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double T = ts.empty() ? std::pow(xs[i], p.real("power")) : ts[i];
      const auto r = identities::smoothed_bound_t14(xs[i], T, ctx);
      out.reports.push_back(report::to_json(r));
      const double ratio = std::abs(r.metrics[0].second);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      table.rows.push_back({xs[i], T, r.lhs.real(), r.metrics[0].second});
    }
    identities::IdentityReport trend;
    trend.name = "t14-trend";
    trend.residual = hi / lo;
    trend.tolerance = p.real("tol");
    trend.params = {{"X", p.str("X")}};
    trend.metrics = {{"min_ratio", lo}, {"max_ratio", hi}};
    trend.passed = hi <= trend.tolerance * lo;
    out.reports.push_back(report::to_json(trend));
    out.table = table;
  } else {
    const WindowSpec w = p.window();
    const arith::i64 l = p.integer("l");
    out.reports.push_back(eval_json("windowed-main-term", identities::windowed_main_term(w, l),
                                    {{"window", w.to_string()}, {"l", std::to_string(l)}}));
    out.reports.push_back(report::to_json(identities::spectral_remainder(w, l, ctx)));
  }
}

void run_eval(const RunConfig& cfg, const Params& p, RunOutcome& out) {
  const std::string& n = cfg.name;
  if (n == "lvalue") {
    const arith::i64 d = p.integer("n");
    out.reports.push_back(eval_json("lvalue", glfunc::l_value(d, p.complex("s")).result, {{"n", p.str("n")}, {"s", p.str("s")}}));
  } else if (n == "kloosterman") {
    const auto v = arith::gen_kloosterman(p.integer("m"), p.integer("n1"), p.integer("n2"), p.integer("q"));
    out.reports.push_back(eval_json("kloosterman", EvalResult(v.value, 0.0, v.q, "exact-enumeration"),
                                    {{"m", p.str("m")}, {"n1", p.str("n1")}, {"n2", p.str("n2")}, {"q", p.str("q")}}));
  } else if (n == "rho") {
    const arith::i64 v = arith::rho(p.integer("q"), p.integer("n"));
    out.reports.push_back(eval_json("rho", EvalResult(static_cast<double>(v), 0.0, 1, "crt"), {{"q", p.str("q")}, {"n", p.str("n")}}));
  } else if (n == "h") {
    const WindowSpec w = p.window();
    out.reports.push_back(eval_json("h",
                                    transforms::h_weight(w, p.complex("s"), small_int("l", p.integer("l")), p.complex("r"),
                                                         h_method(p.str("method"))),
                                    {{"window", w.to_string()}, {"s", p.str("s")}, {"l", p.str("l")}, {"r", p.str("r")},
                                     {"method", p.str("method")}}));
  } else if (n == "g") {
    const WindowSpec w = p.window();
    out.reports.push_back(eval_json("g",
                                    transforms::g_weight(w, p.complex("s"), small_int("l", p.integer("l")),
                                                         small_int("k", p.integer("k")), g_method(p.str("method"))),
                                    {{"window", w.to_string()}, {"s", p.str("s")}, {"l", p.str("l")}, {"k", p.str("k")},
                                     {"method", p.str("method")}}));
  } else {
    const WindowSpec w = p.window();
    const cplx v = transforms::f_weight(w, p.complex("s"), small_int("l", p.integer("l")), p.real("x"));
    out.reports.push_back(eval_json("f", EvalResult(v, 0.0, 1, "cosine-transform"),
                                    {{"window", w.to_string()}, {"s", p.str("s")}, {"l", p.str("l")}, {"x", p.str("x")}}));
  }
}

}  // namespace

// Every default lives here so every check command runs with no flags.
const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> table = {
      // shared
      {"window", "bump:3,10"},
      {"s", "2"},
      {"l", "1"},
      {"alpha", "2"},
      {"nmax", "200"},
      {"theta", "0.16666666666666666"},
      {"k", "1"},
      {"r", "1.5"},
      {"method", "hypergeometric"},
      // check selberg / permutation: all m, n1, n2 <= mmax, q <= qmax
      {"selberg.mmax", "8"},
      {"selberg.qmax", "40"},
      {"selberg.tol", "1e-8"},
      {"permutation.mmax", "8"},
      {"permutation.qmax", "40"},
      {"permutation.tol", "1e-8"},
      // check main-term (relative residual)
      {"main-term.qmax", "100000"},
      {"main-term.tol", "1e-5"},
      // check lerch-moment
      {"lerch-moment.qmax", "2000"},
      {"lerch-moment.tol", "1e-4"},
      // check convolution
      {"convolution.qmax", "5000"},
      {"convolution.tol", "1e-3"},
      // check fe: 20 sampled discriminants with |n| <= 1e4
      {"fe.s", "0.3"},
      {"fe.n", "5,8,12,13,-4,-8,-3,-7,21,-20,45,-52,100,-104,1000,-1003,5000,-5003,9997,-9999"},
      {"fe.tol", "1e-6"},
      // check lerch-fe (needs 0 < beta < 1, Re s < 1)
      {"lerch-fe.beta", "0.3"},
      {"lerch-fe.s", "0.25+2i"},
      {"lerch-fe.tol", "1e-8"},
      // check h-zero
      {"h-zero.tol", "1e-6"},
      // check transforms-cross (hypergeometric splits need Re s < 3/2)
      {"transforms-cross.s", "0.7"},
      {"transforms-cross.tol", "1e-6"},
      // geodesics
      {"census.x", "10000"},
      {"census.tol", "1e-4"},
      {"errors.xs", "100,1000,10000,100000"},
      // moments
      {"t13.X", "500,1000,2000"},
      {"t13.tol", "0.05"},
      {"t14.X", "1000,10000"},
      {"t14.power", "0.7"},
      {"t14.tol", "3"},
      {"windowed.window", "plateau:1000,250"},
      // eval
      {"lvalue.n", "5"},
      {"lvalue.s", "2"},
      {"kloosterman.m", "1"},
      {"kloosterman.n1", "1"},
      {"kloosterman.n2", "1"},
      {"kloosterman.q", "7"},
      {"rho.q", "7"},
      {"rho.n", "5"},
      {"h.s", "0.7"},
      {"g.s", "0.7"},
      {"f.x", "1"},
  };
  return table;
}

const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> keys = {"window", "s",  "l",  "alpha", "nmax",  "qmax",  "mmax", "tol",
                                                "theta",  "k",  "r",  "method", "n",    "m",     "n1",   "n2",
                                                "q",      "x",  "xs", "X",     "T",     "power", "beta", "compare"};
  return keys;
}

void RunConfig::validate() const {
  auto it = kCommands.find(command);
  if (it == kCommands.end()) throw ConfigError("unknown command '" + command + "'");
  if (!it->second.count(name)) throw ConfigError("unknown " + command + " subcommand '" + name + "'");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
  if (auto w = params.find("window"); w != params.end()) WindowSpec::parse(w->second);
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  const auto& keys = param_keys();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "threads") {
      cfg.threads = static_cast<int>(to_int(where + "threads", value));
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
      if (key == "window") {
        try {
          WindowSpec::parse(value);
        } catch (const ConfigError& e) {
          throw ConfigError(where + e.what());
        }
      }
      cfg.params[key] = value;
    } else {
      throw ConfigError(where + "unknown key '" + key + "'");
    }
  }
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Numerical checks for generalized Dirichlet L-functions and prime geodesics"};
  RunConfig cfg;
  std::string config_path, format, output;
  int threads = 0;
  app.add_option("command", cfg.command, "check | geodesics | moments | eval")->required();
  app.add_option("name", cfg.name, "subcommand")->required();
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--output,-o", output, "output path (default stdout)");
  app.add_option("--format", format, "json or csv");
  app.add_option("--threads", threads, "worker threads (default GDL_THREADS or 1)");
  std::map<std::string, std::string> flags;
  for (const auto& key : param_keys()) {
    if (key == "compare") continue;
    app.add_option("--" + key, flags[key]);
  }
  bool compare = false;
  app.add_flag("--compare", compare, "geodesics census: also evaluate the L-function side");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  cfg.threads = ExecContext::from_env().threads;
  if (!config_path.empty()) load_config_file(config_path, cfg);
  for (const auto& [k, v] : flags)
    if (!v.empty()) cfg.params[k] = v;
  if (compare) cfg.params["compare"] = "true";
  if (!format.empty()) cfg.format = format;
  if (!output.empty()) cfg.output_path = output;
  if (threads != 0) cfg.threads = threads;
  cfg.validate();
  return cfg;
}

RunOutcome run(const RunConfig& cfg) {
  cfg.validate();
  const Params p(cfg);
  ExecContext ctx;
  ctx.threads = cfg.threads;
  RunOutcome out;
  if (cfg.command == "check") run_check(cfg, p, ctx, out);
  if (cfg.command == "geodesics") run_geodesics(cfg, p, ctx, out);
  if (cfg.command == "moments") run_moments(cfg, p, ctx, out);
  if (cfg.command == "eval") run_eval(cfg, p, out);
  out.passed = report::all_passed(out.reports);
  return out;
}

json config_echo(const RunConfig& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg.params) params[k] = v;
  return {{"command", cfg.command}, {"name", cfg.name}, {"params", params}, {"format", cfg.format},
          {"threads", cfg.threads}};
}

std::string render(const RunConfig& cfg, const RunOutcome& out) {
  if (cfg.format == "csv") {
    if (!out.table) throw ConfigError("csv output needs a table-producing command (geodesics errors, moments t13/t14)");
    return report::to_csv(*out.table);
  }
  return report::dump(report::envelope(config_echo(cfg), out.reports));
}

int main_entry(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const Error& e) {
    std::cerr << "gdl-cli: " << e.what() << "\n";
    return 2;
  }
  try {
    const RunOutcome out = run(cfg);
    const std::string text = render(cfg, out);
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + cfg.output_path + "'");
      f << text;
      if (!f) throw ConfigError("write failed for '" + cfg.output_path + "'");
    }
    return out.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "gdl-cli " << cfg.command << " " << cfg.name << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gdl::cli
