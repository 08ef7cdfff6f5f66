#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdl/report.hpp"

namespace gdl::cli {

/// command: check | geodesics | moments | eval; name: the subcommand.
struct RunConfig {
  std::string command;
  std::string name;
  std::map<std::string, std::string> params;
  std::string output_path;  // empty: stdout
  std::string format = "json";
  int threads = 1;

  void validate() const;
};

/// Default parameter table. Keys are "<name>.<param>" for subcommand-specific
/// values and "<param>" for shared ones; the specific key wins.
const std::map<std::string, std::string>& defaults();
/// Parameter keys accepted in config files and as --flags.
const std::vector<std::string>& param_keys();

/// key=value lines ('#' comments) merged into cfg; errors name file and line.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Parses argv (flags override the config file, which overrides defaults).
RunConfig parse_args(int argc, const char* const* argv);

struct RunOutcome {
  report::json reports = report::json::array();
  std::optional<report::Table> table;
  bool passed = true;
};

RunOutcome run(const RunConfig& cfg);

report::json config_echo(const RunConfig& cfg);

/// Renders the outcome in cfg.format.
std::string render(const RunConfig& cfg, const RunOutcome& out);

/// Full front end: parse, run, write. Returns 0 iff every contract passed,
/// 1 when a contract fails, 2 on usage or evaluation errors.
int main_entry(int argc, const char* const* argv);

}  // namespace gdl::cli
