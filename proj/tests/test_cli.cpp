#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "gdl/cli.hpp"

using namespace gdl;
using namespace gdl::cli;
namespace fs = std::filesystem;

namespace {

RunConfig parse(std::vector<const char*> args) {
  args.insert(args.begin(), "gdl-cli");
  return parse_args(static_cast<int>(args.size()), args.data());
}

int entry(std::vector<const char*> args) {
  args.insert(args.begin(), "gdl-cli");
  return main_entry(static_cast<int>(args.size()), args.data());
}

fs::path temp_file(const std::string& name, const std::string& body = {}) {
  const fs::path p = fs::temp_directory_path() / ("gdl_cli_test_" + name);
  if (!body.empty()) std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("argument parsing") {
  const auto cfg = parse({"check", "main-term", "--s", "3", "--l", "2", "--threads", "2"});
  CHECK(cfg.command == "check");
  CHECK(cfg.name == "main-term");
  CHECK(cfg.params.at("s") == "3");
  CHECK(cfg.params.at("l") == "2");
  CHECK(cfg.threads == 2);
  CHECK(cfg.format == "json");
  CHECK(parse({"geodesics", "census", "--compare"}).params.at("compare") == "true");
  CHECK_THROWS_AS(parse({"check", "nothing"}), ConfigError);
  CHECK_THROWS_AS(parse({"frobnicate", "x"}), ConfigError);
  CHECK_THROWS_AS(parse({"check", "main-term", "--format", "xml"}), ConfigError);
  CHECK_THROWS_AS(parse({"check", "main-term", "--bogus", "1"}), ConfigError);
  CHECK_THROWS_AS(parse({"check", "convolution", "--window", "bump:9,3"}), ConfigError);
}

TEST_CASE("config files") {
  const auto good = temp_file("good.cfg", "# comment\ns = 2.5   # trailing\nqmax=300\nthreads = 3\n");
  auto cfg = parse({"check", "main-term", "--config", good.c_str(), "--qmax", "400"});
  CHECK(cfg.params.at("s") == "2.5");
  CHECK(cfg.params.at("qmax") == "400");
  CHECK(cfg.threads == 3);

  const auto bad_key = temp_file("bad_key.cfg", "s = 2\nspeed = 4\n");
  try {
    parse({"check", "main-term", "--config", bad_key.c_str()});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bad_key.cfg:2:") != std::string::npos);
  }
  const auto bad_line = temp_file("bad_line.cfg", "window = bump:3,10\njust text\n");
  CHECK_THROWS_WITH_AS(parse({"check", "main-term", "--config", bad_line.c_str()}), doctest::Contains("bad_line.cfg:2:"),
                       ConfigError);
  const auto bad_window = temp_file("bad_window.cfg", "window = bump:3\n");
  CHECK_THROWS_WITH_AS(parse({"check", "convolution", "--config", bad_window.c_str()}),
                       doctest::Contains("bad_window.cfg:1:"), ConfigError);
  CHECK_THROWS_AS(parse({"check", "main-term", "--config", "/nonexistent/gdl.cfg"}), ConfigError);
}

TEST_CASE("every default command runs without flags") {
  for (auto [cmd, name] : {std::pair{"check", "selberg"}, {"check", "permutation"}, {"check", "fe"}, {"check", "lerch-fe"},
                           {"check", "transforms-cross"}, {"eval", "lvalue"}, {"eval", "kloosterman"}, {"eval", "rho"},
                           {"eval", "h"}, {"eval", "g"}, {"eval", "f"}, {"geodesics", "errors"}}) {
    INFO(cmd << " " << name);
    const auto out = run(parse({cmd, name}));
    CHECK(out.passed);
    CHECK_FALSE(out.reports.empty());
  }
}

TEST_CASE("JSON round trip") {
  const auto cfg = parse({"check", "main-term", "--qmax", "2000"});
  const auto out = run(cfg);
  const std::string text = render(cfg, out);
  const auto doc = report::json::parse(text);
  CHECK(doc.at("tool_version") == report::kToolVersion);
  CHECK(doc.at("config_echo").at("name") == "main-term");
  const auto r = report::identity_from_json(doc.at("reports").at(0));
  const auto again = report::to_json(r);
  CHECK(report::dump(again) == report::dump(out.reports.at(0)));
  CHECK(r.residual == out.reports.at(0).at("residual").get<double>());
}

TEST_CASE("non-finite values serialize as null") {
  identities::IdentityReport r;
  r.name = "x";
  r.residual = std::nan("");
  r.lhs = {1.0, std::numeric_limits<double>::infinity()};
  const std::string text = report::dump(report::to_json(r));
  CHECK(text.find("null") != std::string::npos);
  const auto back = report::identity_from_json(report::json::parse(text));
  CHECK(std::isnan(back.residual));
  CHECK(std::isnan(back.lhs.imag()));
  report::Table t{"t", {"a", "b"}, {{1.0, std::nan("")}}};
  CHECK(report::to_csv(t) == "a,b\n1.0,nan\n");
}

TEST_CASE("CSV table output") {
  const auto cfg = parse({"geodesics", "errors", "--format", "csv", "--xs", "1000,10000"});
  const std::string text = render(cfg, run(cfg));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,psi,err,err_normalized");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == 2);
  const auto not_table = parse({"check", "selberg", "--format", "csv"});
  CHECK_THROWS_AS(render(not_table, run(not_table)), ConfigError);
}

TEST_CASE("output bytes are deterministic") {
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const auto a = temp_file("a.json"), b = temp_file("b.json");
  CHECK(entry({"eval", "lvalue", "--n", "-23", "--s", "0.5+3i", "-o", a.c_str()}) == 0);
  CHECK(entry({"eval", "lvalue", "--n", "-23", "--s", "0.5+3i", "-o", b.c_str(), "--threads", "4"}) != 2);
  const std::string ta = slurp(a), tb = slurp(b);
  CHECK(ta.find("2023-11-14T22:13:20Z") != std::string::npos);
  // only the threads echo differs
  const auto ja = report::json::parse(ta), jb = report::json::parse(tb);
  CHECK(ja.at("reports") == jb.at("reports"));
  const auto c = temp_file("c.json");
  CHECK(entry({"eval", "lvalue", "--n", "-23", "--s", "0.5+3i", "-o", c.c_str()}) == 0);
  CHECK(slurp(c) == ta);
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(report::timestamp() == "1970-01-01T00:00:00Z");
}

TEST_CASE("exit codes") {
  const auto out = temp_file("exit.json");
  CHECK(entry({"check", "main-term", "--qmax", "500", "-o", out.c_str()}) == 0);
  CHECK(entry({"check", "lerch-fe", "--tol", "1e-30", "-o", out.c_str()}) == 1);
  CHECK(entry({"check", "main-term", "--s", "0.5", "-o", out.c_str()}) == 2);
  CHECK(entry({"check", "main-term", "--s", "abc", "-o", out.c_str()}) == 2);
  CHECK(entry({"nope", "main-term"}) == 2);
  CHECK(entry({"--help"}) == 0);
}
