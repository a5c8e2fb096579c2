// Command-line front end: tricomi --config FILE [--out DIR] [--seed N] [--override k=v]...
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tricomi/config.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for u_tt - t^m Δu = |u|^p"};
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "configuration file (key = value lines)")->required();
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--seed", seed, "random seed (overrides seed)");
  app.add_option("--override", overrides, "extra key=value, applied last (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read " << config_path << '\n';
    return 1;
  }
  std::stringstream text;
  text << in.rdbuf();
  if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));
  if (!out_dir.empty()) overrides.push_back("output_dir=" + out_dir);

  const auto parsed = tricomi::parse_config(text.str(), overrides);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << '\n';
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << "error: " << tricomi::format_error(e) << '\n';
    return 1;
  }
  const auto& cfg = *parsed.config;
  const std::string dir = cfg.output_dir.empty() ? std::string("out") : cfg.output_dir;
  try {
    const auto report = tricomi::execute(cfg, dir);
    for (const auto& f : report.files) std::cout << dir << '/' << f << '\n';
  } catch (const tricomi::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
