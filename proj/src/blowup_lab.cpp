#include "tricomi/blowup_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "tricomi/kernels.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi {

namespace k = kernels::omp;

FunctionalSeries functional_series(const Trajectory& traj, const RadialGrid& grid,
                                   const ModelParams& params) {
  if (traj.states.size() < 2) throw std::invalid_argument("functional_series: need two snapshots");
  params.validate();
  const std::size_t N = grid.nodes();
  const auto& w = grid.weights();
  const auto& r = grid.r();
  const LambdaFunction lambda(params.m);
  std::vector<double> log_phi(N);
  for (std::size_t j = 0; j < N; ++j) log_phi[j] = log_sphere_weight(grid.n_dim(), r[j]);
  const double p = params.p;
  const double conj = p / (p - 1.0);

  FunctionalSeries out;
  for (const auto& s : traj.states) {
    const double log_lambda = lambda.log_value(s.t);
    double g1 = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      if (s.u[j] != 0.0) g1 += w[j] * s.u[j] * std::exp(log_lambda + log_phi[j]);
    }
    // log-sum-exp over the ball |x| <= M + phi(t)
    const double rho = params.M + phi_speed(params.m, s.t);
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (std::size_t j = 0; j < N && r[j] <= rho; ++j) {
      if (w[j] <= 0.0) continue;
      terms.push_back(std::log(w[j]) + conj * (log_lambda + log_phi[j]));
      peak = std::max(peak, terms.back());
    }
    double sum = 0.0;
    for (double x : terms) sum += std::exp(x - peak);
    const double log_integral = peak + std::log(sum);

    out.times.push_back(s.t);
    out.G.push_back(k::weighted_sum(w, s.u));
    out.G1.push_back(g1);
    out.denom.push_back(std::exp((p - 1.0) * log_integral));
    out.power_integral.push_back(k::weighted_abs_pow_sum(w, s.u, p));
  }
  return out;
}

double denominator_envelope(const ModelParams& params, double t) {
  const double p = params.p;
  const double n1 = params.n - 1.0;
  const double rho = params.M + phi_speed(params.m, t);
  return std::pow(t, -0.25 * params.m * p) * std::pow(rho, n1 * (p - 1.0) - 0.5 * n1 * p);
}

void RiccatiProblem::validate() const {
  if (!(C0 > 0.0 && C1 > 0.0 && R > 0.0)) throw std::domain_error("Riccati: C0, C1, R must be > 0");
  if (!(p > 1.0)) throw std::domain_error("Riccati: p must exceed 1");
  if (!(Gp_a >= 0.0)) throw std::domain_error("Riccati: G'(a) must be >= 0");
  if (!(horizon > a)) throw std::domain_error("Riccati: horizon must exceed a");
  if (!(G_a > 0.0)) throw std::domain_error("Riccati: G(a) must be positive");
}

RiccatiProblem riccati_problem_for(int m, int n, double p, double C0, double C1, double R,
                                   double horizon) {
  const auto bp = blowup_parameters(m, n, p);
  RiccatiProblem prob;
  prob.C0 = C0;
  prob.C1 = C1;
  prob.R = R;
  prob.alpha = bp.alpha;
  prob.q = bp.q_riccati;
  prob.p = p;
  prob.a = 0.0;
  prob.G_a = C0 * std::pow(R, bp.alpha);
  prob.Gp_a = 0.0;
  prob.horizon = horizon;
  return prob;
}

RiccatiResult riccati_oracle(const RiccatiProblem& prob) {
  prob.validate();
  using State = std::array<double, 2>;
  namespace odeint = boost::numeric::odeint;

  auto rhs = [&prob](const State& x, State& dxdt, double t) {
    const double s = prob.R + t;
    const double floor_value = prob.C0 * std::pow(s, prob.alpha);
    dxdt[0] = x[1];
    dxdt[1] = prob.C1 * std::pow(s, -prob.q) * std::pow(std::max(x[0], floor_value), prob.p);
  };

  auto stepper = odeint::make_controlled(1e-10, 1e-10, odeint::runge_kutta_dopri5<State>());
  State x{prob.G_a, prob.Gp_a};
  double t = prob.a;
  double dt = 1e-3 * std::max(1.0, prob.R);
  RiccatiResult res{std::nullopt, t, x[0], 0.0};
  auto finish = [&](double tt, double g) {
    res.t_final = tt;
    res.G_final = g;
    res.growth_exponent =
        std::log(g / prob.G_a) / std::log((prob.R + tt) / (prob.R + prob.a));
  };

  int guard = 0;
  while (t < prob.horizon) {
    if (++guard > 50'000'000) throw std::runtime_error("riccati_oracle: step budget exhausted");
    dt = std::min(dt, prob.horizon - t);
    const State before = x;
    const double t_before = t;
    const auto outcome = stepper.try_step(rhs, x, t, dt);
    if (outcome == odeint::fail) {
      if (dt < 1e-14 * std::max(1.0, t)) {
        res.blowup_time = t;
        finish(t, x[0]);
        return res;
      }
      continue;
    }
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
      res.blowup_time = t_before;
      finish(t_before, before[0]);
      return res;
    }
    if (x[0] > kRiccatiCeiling) {
      // Locate the crossing on the cubic Hermite interpolant of the last step.
      const double h = t - t_before;
      State f0, f1;
      rhs(before, f0, t_before);
      rhs(x, f1, t);
      auto hermite = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * before[0] + (s3 - 2 * s2 + s) * h * f0[0] +
               (-2 * s3 + 3 * s2) * x[0] + (s3 - s2) * h * f1[0];
      };
      double lo = 0.0, hi = 1.0;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (hermite(mid) > kRiccatiCeiling ? hi : lo) = mid;
      }
      res.blowup_time = t_before + hi * h;
      finish(*res.blowup_time, kRiccatiCeiling);
      return res;
    }
  }
  finish(t, x[0]);
  return res;
}

WeightedLowerBound weighted_lower_bound(const Trajectory& traj, const RadialGrid& grid,
                            const ModelParams& params, double t0) {
  if (traj.states.empty()) throw std::domain_error("weighted_lower_bound: empty trajectory");
  const auto& first = traj.states.front();
  auto nonneg_nonzero = [](const std::vector<double>& a) {
    bool any = false;
    for (double x : a) {
      if (x < 0.0) return false;
      any = any || x > 0.0;
    }
    return any;
  };
  if (!nonneg_nonzero(first.u) || !nonneg_nonzero(first.v)) {
    throw std::domain_error("weighted_lower_bound: data must be nonnegative and not identically zero");
  }
  const auto series = functional_series(traj, grid, params);
  WeightedLowerBound res{t0, std::numeric_limits<double>::infinity(), false};
  bool any = false;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < t0) continue;
    if (traj.terminated == Termination::BlowupDetected && i + 1 == series.times.size() &&
        t >= traj.t_end) {
      continue;  // the state at detection is already past the threshold
    }
    any = true;
    res.c_lower = std::min(res.c_lower, series.G1[i] * std::pow(t, 0.5 * params.m));
  }
  if (!any) throw std::domain_error("weighted_lower_bound: no snapshot at or after t0");
  res.holds = res.c_lower > 0.0 && std::isfinite(res.c_lower);
  return res;
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::BlewUp: return "blowup";
    case VerdictKind::SurvivedToTmax: return "survived";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

BlowupVerdict verdict_of(const Trajectory& traj) {
  BlowupVerdict v;
  v.sup_initial = traj.initial_scale;
  for (const auto& d : traj.diagnostics) v.sup_max = std::max(v.sup_max, d.sup_norm);
  if (!traj.diagnostics.empty()) {
    v.sup_final = traj.diagnostics.back().sup_norm;
    v.G_final = traj.diagnostics.back().G;
  }
  switch (traj.terminated) {
    case Termination::BlowupDetected:
      v.kind = VerdictKind::BlewUp;
      v.t_star = traj.t_end;
      break;
    case Termination::StepFailure:
      v.kind = VerdictKind::Inconclusive;
      v.note = "step failure";
      break;
    case Termination::ReachedTmax: {
      v.kind = VerdictKind::SurvivedToTmax;
      // least-squares slope of log sup against log t over the second half
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int cnt = 0;
      const double t_half = 0.5 * traj.t_end;
      for (const auto& d : traj.diagnostics) {
        if (d.t < t_half || d.t <= 0.0 || !(d.sup_norm > 0.0)) continue;
        const double x = std::log(d.t), y = std::log(d.sup_norm);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
      }
      if (cnt >= 2) {
        const double den = cnt * sxx - sx * sx;
        v.decay_rate = den != 0.0 ? (cnt * sxy - sx * sy) / den : 0.0;
      }
      break;
    }
  }
  return v;
}

std::vector<SweepCell> sweep(const SweepConfig& config) {
  if (config.p_grid.empty() || config.amplitude_grid.empty()) {
    throw std::domain_error("sweep: parameter grids must be nonempty");
  }
  const std::size_t np = config.p_grid.size();
  const std::size_t na = config.amplitude_grid.size();
  std::vector<SweepCell> cells(np * na);
  const RadialGrid grid = RadialGrid::for_run(config.n, config.m, config.M, config.t_max, config.dr);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const double p = config.p_grid[idx / na];
    const double amp = config.amplitude_grid[idx % na];
    SweepCell cell{config.m, config.n, p, amp, {}};
    try {
      SolverConfig sc = config.base;
      sc.params = ModelParams{config.m, config.n, p, config.M, amp};
      sc.t_max = config.t_max;
      const auto [u0, u1] = make_bump(grid, config.M, amp, config.profile);
      SolveOptions opts;
      cell.verdict = verdict_of(solve(sc, grid, u0, u1, opts));
    } catch (const std::exception& e) {
      cell.verdict.kind = VerdictKind::Inconclusive;
      cell.verdict.note = e.what();
    }
    cells[idx] = cell;
  }
  return cells;
}

}  // namespace tricomi
