#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdl/common.hpp"
#include "gdl/geodesics.hpp"
#include "gdl/identities.hpp"

namespace gdl::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat numeric table (CSV-exportable).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

json to_json(const identities::IdentityReport& r);
json to_json(const EvalResult& r);
json to_json(const geodesics::CensusResult& r);
json to_json(const Table& t);
json complex_json(cplx v);

/// Reads back what to_json(IdentityReport) wrote.
identities::IdentityReport identity_from_json(const json& j);

Table pgt_table(const std::vector<geodesics::PgtRow>& rows);

/// ISO-8601 UTC time from SOURCE_DATE_EPOCH (0 when unset) so reports are
/// reproducible byte for byte.
std::string timestamp();

/// Envelope {tool_version, timestamp, config_echo, reports}.
json envelope(const json& config_echo, const json& reports);

/// JSON text with every floating-point number at 17 significant digits.
std::string dump(const json& j, int indent = 2);
/// CSV of a table: header row then one line per row, 17 significant digits.
std::string to_csv(const Table& t);

/// True when every report in the array that carries a "passed" field has it set.
bool all_passed(const json& reports);

}  // namespace gdl::report
