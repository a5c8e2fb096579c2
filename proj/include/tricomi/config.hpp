#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tricomi {

enum class Command { Exponents, Run, Sweep, Strichartz, Picard };
std::string_view to_string(Command c);

using ConfigValue = std::variant<long long, double, bool, std::string, std::vector<long long>,
                                 std::vector<double>, std::vector<std::string>>;

struct ConfigEntry {
  ConfigValue value;
  std::string text;  // the value as written, trimmed
  int line;          // 0 for command-line overrides
};

/// Parsed `key = value` configuration. Keys are validated against a fixed
/// schema; typed getters fall back to the documented defaults.
struct ExperimentConfig {
  Command command = Command::Exponents;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::map<std::string, ConfigEntry> values;
  std::vector<std::string> warnings;  // copied from the parse

  bool has(const std::string& key) const { return values.count(key) != 0; }
  long long get_int(const std::string& key, long long fallback) const;
  double get_real(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<long long> get_int_list(const std::string& key,
                                      const std::vector<long long>& fallback) const;
  std::vector<double> get_real_list(const std::string& key,
                                    const std::vector<double>& fallback) const;
  std::vector<std::string> get_string_list(const std::string& key,
                                           const std::vector<std::string>& fallback) const;
};

struct ConfigError {
  int line;  // 0 for overrides and missing keys
  std::string key;
  std::string message;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;  // empty when errors is nonempty
  std::vector<ConfigError> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

/// Parses the line-oriented format: one `key = value` per line, `#` starts a
/// comment, blank lines ignored, lists are comma separated. `overrides` are
/// `key=value` strings applied after the text. All errors are collected.
/// A repeated key keeps the last value and records a warning.
ParseResult parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

std::string format_error(const ConfigError& e);

}  // namespace tricomi
