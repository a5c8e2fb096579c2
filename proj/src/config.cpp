#include "tricomi/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace tricomi {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Exponents: return "exponents";
    case Command::Run: return "run";
    case Command::Sweep: return "sweep";
    case Command::Strichartz: return "strichartz";
    case Command::Picard: return "picard";
  }
  return "?";
}

namespace {

enum class Kind { Int, Real, Bool, String, Enum, IntList, RealList, EnumList };

struct KeySpec {
  Kind kind;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  std::vector<std::string> choices = {};
};

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::map<std::string, KeySpec>& schema() {
  static const std::map<std::string, KeySpec> s = {
      {"command", {Kind::Enum, -kInf, kInf, false, {"exponents", "run", "sweep", "strichartz", "picard"}}},
      {"seed", {Kind::Int, 0}},
      {"output_dir", {Kind::String}},
      {"m", {Kind::Int, 0, 40}},
      {"n", {Kind::Int, 1, 41}},
      {"m_list", {Kind::IntList, 0, 40}},
      {"n_list", {Kind::IntList, 1, 41}},
      {"p", {Kind::Real, 1, kInf, true}},
      {"p_list", {Kind::RealList, 1, kInf, true}},
      {"M", {Kind::Real, 0, kInf, true}},
      {"amplitude", {Kind::Real, 0}},
      {"amplitude_list", {Kind::RealList, 0}},
      {"sigma", {Kind::Int, -1, 1}},
      {"power", {Kind::Enum, -kInf, kInf, false, {"absolute", "signed"}}},
      {"profile", {Kind::Enum, -kInf, kInf, false, {"cosine", "gaussian", "polynomial"}}},
      {"profile_list", {Kind::EnumList, -kInf, kInf, false, {"cosine", "gaussian", "polynomial"}}},
      {"t_max", {Kind::Real, 0, kInf, true}},
      {"cfl", {Kind::Real, 0, 1, true}},
      {"dt_min", {Kind::Real, 0, kInf, true}},
      {"dt_max", {Kind::Real, 0, kInf, true}},
      {"dr", {Kind::Real, 0, kInf, true}},
      {"output_dt", {Kind::Real, 0, kInf, true}},
      {"blowup_factor", {Kind::Real, 1, kInf, true}},
      {"support_threshold", {Kind::Real, 0, kInf, true}},
      {"mode", {Kind::Enum, -kInf, kInf, false, {"homogeneous", "inhomogeneous", "scaling"}}},
      {"s", {Kind::Real, -3, 3}},
      {"q", {Kind::Real, 1}},
      {"lambda_list", {Kind::RealList, 0, kInf, true}},
      {"velocity", {Kind::Real}},
      {"phi_max", {Kind::Real, 0, kInf, true}},
      {"cauchy_tol", {Kind::Real, 0, kInf, true}},
      {"cells", {Kind::Int, 16, 1 << 22}},
      {"tau", {Kind::Real, 0, kInf, true}},
      {"k_max", {Kind::Int, 0, 200}},
      {"target_ratio", {Kind::Real, 0, kInf, true}},
      {"epsilon_search", {Kind::Bool}},
      {"sampled_sup", {Kind::Bool}},
      {"mc_samples", {Kind::Int, 1, 1e9}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> to_real(const std::string& s) {
  double v = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, end, v);
  if (ec != std::errc() || ptr != end || s.empty() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  return std::nullopt;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Int: return "integer";
    case Kind::Real: return "real";
    case Kind::Bool: return "boolean";
    case Kind::String: return "string";
    case Kind::Enum: return "one of the listed choices";
    case Kind::IntList: return "comma-separated integers";
    case Kind::RealList: return "comma-separated reals";
    case Kind::EnumList: return "comma-separated choices";
  }
  return "?";
}

std::string range_text(const KeySpec& spec) {
  std::string lo = std::isfinite(spec.lo) ? fmt::format("{}{}", spec.lo_open ? ">" : ">=", spec.lo) : "";
  std::string hi = std::isfinite(spec.hi) ? fmt::format("<= {}", spec.hi) : "";
  if (!lo.empty() && !hi.empty()) return lo + " and " + hi;
  return lo + hi;
}

bool in_range(const KeySpec& spec, double v) {
  if (spec.lo_open ? !(v > spec.lo) : !(v >= spec.lo)) return false;
  return v <= spec.hi;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

// Converts `text` for `key`; returns an error message on failure.
std::optional<std::string> convert(const KeySpec& spec, const std::string& text, ConfigValue& out) {
  auto bad_type = [&] { return fmt::format("expected {}, got '{}'", kind_name(spec.kind), text); };
  auto bad_range = [&](const std::string& v) {
    return fmt::format("value {} out of range (must be {})", v, range_text(spec));
  };
  auto bad_choice = [&](const std::string& v) {
    return fmt::format("unknown choice '{}' (expected {})", v, join(spec.choices));
  };
  switch (spec.kind) {
    case Kind::Int: {
      auto v = to_int(text);
      if (!v) return bad_type();
      if (!in_range(spec, static_cast<double>(*v))) return bad_range(text);
      out = *v;
      return std::nullopt;
    }
    case Kind::Real: {
      auto v = to_real(text);
      if (!v) return bad_type();
      if (!in_range(spec, *v)) return bad_range(text);
      out = *v;
      return std::nullopt;
    }
    case Kind::Bool: {
      auto v = to_bool(text);
      if (!v) return bad_type();
      out = *v;
      return std::nullopt;
    }
    case Kind::String:
      if (text.empty()) return std::string("empty value");
      out = text;
      return std::nullopt;
    case Kind::Enum:
      if (std::find(spec.choices.begin(), spec.choices.end(), text) == spec.choices.end()) {
        return bad_choice(text);
      }
      out = text;
      return std::nullopt;
    case Kind::IntList: {
      std::vector<long long> xs;
      for (const auto& item : split_list(text)) {
        auto v = to_int(item);
        if (!v) return bad_type();
        if (!in_range(spec, static_cast<double>(*v))) return bad_range(item);
        xs.push_back(*v);
      }
      if (xs.empty()) return std::string("empty list");
      out = xs;
      return std::nullopt;
    }
    case Kind::RealList: {
      std::vector<double> xs;
      for (const auto& item : split_list(text)) {
        auto v = to_real(item);
        if (!v) return bad_type();
        if (!in_range(spec, *v)) return bad_range(item);
        xs.push_back(*v);
      }
      if (xs.empty()) return std::string("empty list");
      out = xs;
      return std::nullopt;
    }
    case Kind::EnumList: {
      std::vector<std::string> xs;
      for (const auto& item : split_list(text)) {
        if (std::find(spec.choices.begin(), spec.choices.end(), item) == spec.choices.end()) {
          return bad_choice(item);
        }
        xs.push_back(item);
      }
      if (xs.empty()) return std::string("empty list");
      out = xs;
      return std::nullopt;
    }
  }
  return std::string("unsupported type");
}

Command command_from(const std::string& s) {
  if (s == "run") return Command::Run;
  if (s == "sweep") return Command::Sweep;
  if (s == "strichartz") return Command::Strichartz;
  if (s == "picard") return Command::Picard;
  return Command::Exponents;
}

// Each inner vector is a set of alternatives; at least one must be present.
std::vector<std::vector<std::string>> required_keys(Command c, const ExperimentConfig& cfg) {
  switch (c) {
    case Command::Exponents: return {{"m", "m_list"}, {"n", "n_list"}};
    case Command::Run: return {{"m"}, {"n"}, {"p"}};
    case Command::Sweep: return {{"m"}, {"n"}, {"p_list"}, {"amplitude_list"}};
    case Command::Strichartz:
      if (cfg.get_string("mode", "homogeneous") == "inhomogeneous") return {{"m"}};
      return {{"m"}, {"s"}};
    case Command::Picard: return {{"m"}, {"p"}};
  }
  return {};
}

}  // namespace

long long ExperimentConfig::get_int(const std::string& key, long long fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<long long>(it->second.value);
}

double ExperimentConfig::get_real(const std::string& key, double fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<double>(it->second.value);
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<bool>(it->second.value);
}

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<std::string>(it->second.value);
}

std::vector<long long> ExperimentConfig::get_int_list(const std::string& key,
                                                      const std::vector<long long>& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<std::vector<long long>>(it->second.value);
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& key,
                                                    const std::vector<double>& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<std::vector<double>>(it->second.value);
}

std::vector<std::string> ExperimentConfig::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::get<std::vector<std::string>>(it->second.value);
}

std::string format_error(const ConfigError& e) {
  std::string out = e.line > 0 ? fmt::format("line {}: ", e.line) : std::string();
  if (!e.key.empty()) out += e.key + ": ";
  return out + e.message;
}

ParseResult parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  ParseResult res;
  ExperimentConfig cfg;

  auto handle = [&](const std::string& raw, int line) {
    std::string body = raw;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    body = trim(body);
    if (body.empty()) return;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      res.errors.push_back({line, "", fmt::format("expected 'key = value', got '{}'", body)});
      return;
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) {
      res.errors.push_back({line, "", "missing key before '='"});
      return;
    }
    const auto it = schema().find(key);
    if (it == schema().end()) {
      res.errors.push_back({line, key, "unknown key"});
      return;
    }
    ConfigValue v;
    if (auto err = convert(it->second, value, v)) {
      res.errors.push_back({line, key, *err});
      return;
    }
    if (auto prev = cfg.values.find(key); prev != cfg.values.end()) {
      const std::string from =
          prev->second.line > 0 ? fmt::format("line {}", prev->second.line) : "an override";
      const std::string to = line > 0 ? fmt::format("line {}", line) : "an override";
      res.warnings.push_back(
          fmt::format("duplicate key '{}': value from {} replaced by {}", key, from, to));
    }
    cfg.values[key] = ConfigEntry{v, value, line};
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    handle(std::string(text.substr(pos, end - pos)), line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  for (const auto& ov : overrides) {
    if (ov.find('=') == std::string::npos) {
      res.errors.push_back({0, "", fmt::format("override '{}' is not key=value", ov)});
      continue;
    }
    handle(ov, 0);
  }

  if (!cfg.has("command")) {
    res.errors.push_back({0, "command", "missing required key"});
  } else {
    cfg.command = command_from(cfg.get_string("command", "exponents"));
    for (const auto& alternatives : required_keys(cfg.command, cfg)) {
      const bool present = std::any_of(alternatives.begin(), alternatives.end(),
                                       [&](const std::string& k) { return cfg.has(k); });
      if (!present) {
        std::string names;
        for (const auto& k : alternatives) names += (names.empty() ? "" : " or ") + k;
        res.errors.push_back({0, names,
                              fmt::format("missing required key for command '{}'",
                                          to_string(cfg.command))});
      }
    }
  }
  cfg.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  cfg.output_dir = cfg.get_string("output_dir", "");

  std::stable_sort(res.errors.begin(), res.errors.end(),
                   [](const ConfigError& a, const ConfigError& b) {
                     const int la = a.line == 0 ? std::numeric_limits<int>::max() : a.line;
                     const int lb = b.line == 0 ? std::numeric_limits<int>::max() : b.line;
                     return la < lb;
                   });
  cfg.warnings = res.warnings;
  if (res.errors.empty()) res.config = std::move(cfg);
  return res;
}

}  // namespace tricomi
