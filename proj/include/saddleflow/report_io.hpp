#pragma once

#include "saddleflow/kkt.hpp"
#include "saddleflow/modes.hpp"
#include "saddleflow/problem.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace saddleflow {

/// Outcome of a CLI scenario. `pass` is decided from `metrics` against the thresholds
/// declared in scenarios.hpp.
struct ScenarioResult {
  std::string scenario_name;
  bool pass = false;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
  std::vector<std::string> artifact_paths;
  std::vector<std::string> warnings;
  std::string diagnostic;

  bool operator==(const ScenarioResult&) const = default;
};

nlohmann::json to_json(const KktReport& report);
KktReport kkt_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModeTrace& trace);
ModeTrace mode_trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScenarioResult& result);
ScenarioResult scenario_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PrimalDualPoint& p);
PrimalDualPoint point_from_json(const nlohmann::json& j);

/// Pretty-printed with a trailing newline; throws Error when the file cannot be written.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
/// Throws ParseError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace saddleflow
