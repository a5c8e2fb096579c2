#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tricomi/config.hpp"

namespace tricomi {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;  // key -> value as written
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> files;  // written, relative to the output directory
  std::vector<std::string> warnings;
  double wall_clock_seconds = 0.0;
  std::string version;

  bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

/// Runs the configured command, writes its CSV and report.json into
/// `out_dir` (created if needed) and returns the report. CSV contents depend
/// only on the configuration and seed.
RunReport execute(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// CSV rendering of a real: 12 significant digits, "nan"/"inf" spelled out.
std::string csv_real(double x);

}  // namespace tricomi
