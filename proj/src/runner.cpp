#include "tricomi/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "tricomi/blowup_lab.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/grid.hpp"
#include "tricomi/picard.hpp"
#include "tricomi/solver.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/strichartz.hpp"

namespace tricomi {

using nlohmann::json;

std::string csv_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", x);
}

json to_json(const RunReport& r) {
  return json{{"command", r.command},         {"seed", r.seed},
              {"config", r.config},           {"results", r.results},
              {"files", r.files},             {"warnings", r.warnings},
              {"wall_clock_seconds", r.wall_clock_seconds}, {"version", r.version}};
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = j.at("config").get<std::map<std::string, std::string>>();
  r.results = j.at("results");
  r.files = j.at("files").get<std::vector<std::string>>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  r.version = j.at("version").get<std::string>();
  return r;
}

namespace {

// JSON has no NaN or infinity; those become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

 private:
  static std::string cell(double x) { return csv_real(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(long long x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  std::ofstream out_;
};

Profile profile_from(const std::string& s) {
  if (s == "gaussian") return Profile::Gaussian;
  if (s == "polynomial") return Profile::Polynomial;
  return Profile::CosineBump;
}

SolverConfig solver_config(const ExperimentConfig& c) {
  SolverConfig sc;
  sc.params.m = static_cast<int>(c.get_int("m", 1));
  sc.params.n = static_cast<int>(c.get_int("n", 3));
  sc.params.p = c.get_real("p", 2.0);
  sc.params.M = c.get_real("M", 1.0);
  sc.params.amplitude = c.get_real("amplitude", 1.0);
  sc.sigma = static_cast<int>(c.get_int("sigma", 1));
  sc.power = c.get_string("power", "absolute") == "signed" ? kernels::Power::Signed
                                                            : kernels::Power::Absolute;
  sc.t_max = c.get_real("t_max", sc.t_max);
  sc.cfl = c.get_real("cfl", sc.cfl);
  sc.dt_min = c.get_real("dt_min", sc.dt_min);
  sc.dt_max = c.get_real("dt_max", sc.dt_max);
  sc.blowup_factor = c.get_real("blowup_factor", sc.blowup_factor);
  sc.support_threshold = c.get_real("support_threshold", sc.support_threshold);
  sc.output_dt = c.get_real("output_dt", sc.output_dt);
  return sc;
}

json verdict_json(const BlowupVerdict& v) {
  return json{{"kind", to_string(v.kind)},     {"t_star", num(v.t_star)},
              {"decay_rate", num(v.decay_rate)}, {"sup_initial", num(v.sup_initial)},
              {"sup_max", num(v.sup_max)},     {"sup_final", num(v.sup_final)},
              {"G_final", num(v.G_final)},     {"note", v.note}};
}

json run_exponents(const ExperimentConfig& c, const std::filesystem::path& dir,
                   std::vector<std::string>& files) {
  const auto ms = c.has("m_list") ? c.get_int_list("m_list", {}) : std::vector<long long>{c.get_int("m", 1)};
  const auto ns = c.has("n_list") ? c.get_int_list("n_list", {}) : std::vector<long long>{c.get_int("n", 3)};
  CsvWriter csv(dir / "exponents.csv", "m,n,p_crit,p_conf,p_strauss,p_fujita,q0,p0");
  files.push_back("exponents.csv");
  json rows = json::array();
  for (long long m : ms) {
    for (long long n : ns) {
      const auto e = exponent_table(static_cast<int>(m), static_cast<int>(n));
      csv.row(m, n, e.p_crit, e.p_conf, e.p_strauss, e.p_fujita, e.q0, e.p0);
      rows.push_back(json{{"m", m}, {"n", n}, {"p_crit", num(e.p_crit)}, {"p_conf", num(e.p_conf)},
                          {"small_data_upper", num(e.small_data_upper)}});
    }
  }
  return json{{"rows", rows}};
}

json run_solver(const ExperimentConfig& c, const std::filesystem::path& dir,
                std::vector<std::string>& files) {
  const SolverConfig sc = solver_config(c);
  sc.validate();
  const double dr = c.get_real("dr", 0.02);
  const auto grid = RadialGrid::for_run(sc.params.n, sc.params.m, sc.params.M, sc.t_max, dr);
  const auto [u0, u1] =
      make_bump(grid, sc.params.M, sc.params.amplitude, profile_from(c.get_string("profile", "cosine")));
  const auto traj = solve(sc, grid, u0, u1);

  CsvWriter csv(dir / "diagnostics.csv", "t,sup_norm,l2,G,G1,support_radius");
  files.push_back("diagnostics.csv");
  for (const auto& d : traj.diagnostics) csv.row(d.t, d.sup_norm, d.l2, d.G, d.G1, d.support_radius);

  // Seeded Monte Carlo check of the test-function weight at r = M.
  const auto samples = static_cast<std::uint64_t>(c.get_int("mc_samples", 20000));
  const double mc = sphere_weight_monte_carlo(sc.params.n, sc.params.M, samples, c.seed);
  const double exact = sphere_weight(sc.params.n, sc.params.M);

  return json{{"regime", to_string(classify(sc.params))},
              {"termination", to_string(traj.terminated)},
              {"t_end", traj.t_end},
              {"steps", traj.steps},
              {"grid", {{"R", grid.R()}, {"cells", grid.cells()}, {"dr", grid.dr()}}},
              {"verdict", verdict_json(verdict_of(traj))},
              {"test_weight_check",
               {{"r", sc.params.M}, {"monte_carlo", mc}, {"closed_form", exact}, {"samples", samples}}}};
}

json run_sweep(const ExperimentConfig& c, const std::filesystem::path& dir,
               std::vector<std::string>& files) {
  SweepConfig cfg;
  cfg.m = static_cast<int>(c.get_int("m", 1));
  cfg.n = static_cast<int>(c.get_int("n", 3));
  cfg.p_grid = c.get_real_list("p_list", {});
  cfg.amplitude_grid = c.get_real_list("amplitude_list", {});
  cfg.t_max = c.get_real("t_max", 20.0);
  cfg.M = c.get_real("M", 1.0);
  cfg.dr = c.get_real("dr", 0.02);
  cfg.profile = profile_from(c.get_string("profile", "cosine"));
  cfg.base = solver_config(c);
  const auto cells = sweep(cfg);

  CsvWriter csv(dir / "sweep.csv", "m,n,p,amplitude,verdict,t_star");
  files.push_back("sweep.csv");
  json rows = json::array();
  for (const auto& cell : cells) {
    const bool blew = cell.verdict.kind == VerdictKind::BlewUp;
    csv.row(cell.m, cell.n, cell.p, cell.amplitude, to_string(cell.verdict.kind),
            blew ? csv_real(cell.verdict.t_star) : std::string());
    rows.push_back(json{{"p", cell.p},
                        {"amplitude", cell.amplitude},
                        {"regime", to_string(classify(ModelParams{cfg.m, cfg.n, cell.p, cfg.M, cell.amplitude}))},
                        {"verdict", verdict_json(cell.verdict)}});
  }
  return json{{"cells", rows}};
}

json estimate_json(const EstimateReport& r) {
  json members = json::array();
  for (const auto& m : r.members) {
    members.push_back(json{{"label", m.label},         {"lambda", m.lambda},
                           {"ratio", num(m.ratio)},     {"spacetime", num(m.spacetime)},
                           {"data_norm", num(m.data_norm)}, {"T", m.T},
                           {"cauchy_converged", m.cauchy_converged}});
  }
  return json{{"q", num(r.q)},         {"s", num(r.s)},         {"ratio", num(r.ratio)},
              {"spread", num(r.spread)}, {"all_converged", r.all_converged}, {"members", members}};
}

json run_strichartz(const ExperimentConfig& c, const std::filesystem::path& dir,
                    std::vector<std::string>& files) {
  const int m = static_cast<int>(c.get_int("m", 1));
  const std::string mode = c.get_string("mode", "homogeneous");
  const auto lambdas = c.get_real_list("lambda_list", {1.0, 2.0, 4.0});
  const auto profiles = c.get_string_list("profile_list", {"cosine"});
  CsvWriter csv(dir / "estimates.csv", "family,lambda,ratio");
  files.push_back("estimates.csv");

  if (mode == "scaling") {
    ScalingSetup s;
    s.m = m;
    s.s = c.get_real("s", 1.0 / (m + 2.0));
    s.M = c.get_real("M", 1.0);
    s.phi_window = c.get_real("phi_max", s.phi_window);
    s.cells = static_cast<std::size_t>(c.get_int("cells", 1024));
    s.cfl = c.get_real("cfl", s.cfl);
    s.profile = profile_from(profiles.front());
    const auto rep = scaling_check(s, lambdas);
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
      csv.row(std::string("scaling-") + profiles.front(), rep.lambdas[i], rep.ratios[i]);
    }
    return json{{"mode", mode},
                {"max_deviation", num(rep.max_deviation)},
                {"max_residual", num(rep.max_residual)}};
  }

  if (mode == "inhomogeneous") {
    InhomogeneousSetup s;
    s.m = m;
    s.q = c.get_real("q", 0.0);
    s.M = c.get_real("M", 1.0);
    s.dr = c.get_real("dr", s.dr);
    s.cfl = c.get_real("cfl", s.cfl);
    s.phi_max = c.get_real("phi_max", s.phi_max);
    s.cauchy_tol = c.get_real("cauchy_tol", s.cauchy_tol);
    const double tau = c.get_real("tau", 1.0);
    for (const auto& prof : profiles) {
      for (double l : lambdas) {
        s.family.push_back(ForcingMember{prof, profile_from(prof), l, tau, c.get_real("amplitude", 1.0)});
      }
    }
    const auto rep = inhomogeneous_ratio(s);
    for (const auto& mr : rep.estimate.members) csv.row(mr.label, mr.lambda, mr.ratio);
    return json{{"mode", mode}, {"estimate", estimate_json(rep.estimate)}, {"combined", rep.combined}};
  }

  HomogeneousSetup s;
  s.m = m;
  s.s = c.get_real("s", 0.5);
  s.M = c.get_real("M", 1.0);
  s.dr = c.get_real("dr", s.dr);
  s.cfl = c.get_real("cfl", s.cfl);
  s.phi_max = c.get_real("phi_max", s.phi_max);
  s.cauchy_tol = c.get_real("cauchy_tol", s.cauchy_tol);
  const double velocity = c.get_real("velocity", 0.0);
  for (const auto& prof : profiles) {
    for (double l : lambdas) s.family.push_back(FamilyMember{prof, profile_from(prof), l, velocity});
  }
  const auto rep = homogeneous_ratio(s);
  for (const auto& mr : rep.members) csv.row(mr.label, mr.lambda, mr.ratio);
  return json{{"mode", mode}, {"estimate", estimate_json(rep)}};
}

json run_picard(const ExperimentConfig& c, const std::filesystem::path& dir,
                std::vector<std::string>& files) {
  PicardSetup s;
  s.config = solver_config(c);
  s.config.params.n = 3;
  if (!c.has("amplitude")) s.config.params.amplitude = 1e-3;
  if (!c.has("t_max")) s.config.t_max = 8.0;
  s.dr = c.get_real("dr", s.dr);
  s.profile = profile_from(c.get_string("profile", "cosine"));
  s.k_max = static_cast<int>(c.get_int("k_max", s.k_max));
  s.sampled_sup_norm = c.get_bool("sampled_sup", false);
  const auto rep = iterate(s);

  CsvWriter csv(dir / "picard.csv", "k,M_k,N_k,ratio");
  files.push_back("picard.csv");
  for (std::size_t k = 0; k < rep.M.size(); ++k) csv.row(k, rep.M[k], rep.N[k], rep.ratios[k]);

  json out{{"converged", rep.converged}, {"diverged", rep.diverged},  {"k_stop", rep.k_stop},
           {"q0", rep.q0},               {"r", rep.r},                {"beta", rep.beta},
           {"fixed_point_residual", num(rep.fixed_point_residual)},
           {"regime", to_string(classify(s.config.params))}};
  if (c.get_bool("epsilon_search", false)) {
    out["eps_star"] = epsilon_threshold(s, c.get_real("target_ratio", 0.9));
  }
  return out;
}

}  // namespace

RunReport execute(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  RunReport rep;
  rep.command = std::string(to_string(config.command));
  rep.seed = config.seed;
  rep.version = std::string(kVersion);
  rep.warnings = config.warnings;
  for (const auto& [k, e] : config.values) rep.config[k] = e.text;

  switch (config.command) {
    case Command::Exponents: rep.results = run_exponents(config, out_dir, rep.files); break;
    case Command::Run: rep.results = run_solver(config, out_dir, rep.files); break;
    case Command::Sweep: rep.results = run_sweep(config, out_dir, rep.files); break;
    case Command::Strichartz: rep.results = run_strichartz(config, out_dir, rep.files); break;
    case Command::Picard: rep.results = run_picard(config, out_dir, rep.files); break;
  }
  rep.files.push_back("report.json");
  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream(out_dir / "report.json") << to_json(rep).dump(2) << '\n';
  return rep;
}

}  // namespace tricomi
