#include "tricomi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tricomi/specfun.hpp"

namespace tricomi {

namespace k = kernels::omp;

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Gaussian: return "gaussian";
    case Profile::CosineBump: return "cosine";
    case Profile::Polynomial: return "polynomial";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTmax: return "reached_tmax";
    case Termination::BlowupDetected: return "blowup";
    case Termination::StepFailure: return "step_failure";
  }
  return "?";
}

double bump_profile(Profile profile, double M, double r) {
  const double s = r / M;
  if (s >= 1.0) return 0.0;
  switch (profile) {
    case Profile::Gaussian: return std::exp(-s * s / (1.0 - s * s));
    case Profile::CosineBump: {
      const double c = std::cos(0.5 * std::numbers::pi * s);
      return c * c * c * c;
    }
    case Profile::Polynomial: {
      const double c = 1.0 - s * s;
      return c * c * c * c;
    }
  }
  return 0.0;
}

std::pair<std::vector<double>, std::vector<double>> make_bump(const RadialGrid& grid, double M,
                                                              double amplitude, Profile profile) {
  if (!(M > 0.0)) throw std::domain_error("make_bump: M must be positive");
  if (M >= grid.R()) throw std::domain_error("make_bump: support radius M must be below R");
  std::vector<double> u(grid.nodes());
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] = amplitude == 0.0 ? 0.0 : amplitude * bump_profile(profile, M, grid.r()[j]);
  }
  return {u, u};
}

void SolverConfig::validate() const {
  params.validate();
  if (sigma < -1 || sigma > 1) throw std::domain_error("sigma must be -1, 0 or +1");
  if (!(t_max > 0.0)) throw std::domain_error("t_max must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::domain_error("cfl must lie in (0, 1]");
  if (!(dt_min > 0.0 && dt_min < dt_max)) throw std::domain_error("need 0 < dt_min < dt_max");
  if (!(blowup_factor > 1.0)) throw std::domain_error("blowup_factor must exceed 1");
  if (!(support_threshold > 0.0)) throw std::domain_error("support_threshold must be positive");
  if (!(output_dt > 0.0)) throw std::domain_error("output_dt must be positive");
  if (power == kernels::Power::Signed && std::abs(params.p - std::round(params.p)) > 0.0) {
    throw std::domain_error("signed power requires an integer p");
  }
}

double effective_cfl_cap(int n) { return n <= 3 ? 1.0 : 0.95 * std::sqrt(2.0 / n); }

double step_size(const SolverConfig& config, double dr, double t) {
  const int m = config.params.m;
  const double speed_factor = (m == 0 || t <= 1.0) ? 1.0 : std::pow(t, -0.5 * m);
  const double c = std::min(config.cfl, effective_cfl_cap(config.params.n));
  return std::min(c * dr * speed_factor, config.dt_max);
}

double support_radius(const RadialGrid& grid, std::span<const double> u, double threshold) {
  if (!(threshold > 0.0)) throw std::domain_error("support_radius: threshold must be positive");
  const double sup = k::max_abs(u);
  if (!(sup > 0.0)) return 0.0;
  const double cut = threshold * sup;
  for (std::size_t j = u.size(); j-- > 0;) {
    if (std::abs(u[j]) > cut) return grid.r()[j];
  }
  return 0.0;
}

namespace {

std::vector<double> log_test_weight(const RadialGrid& grid) {
  std::vector<double> out(grid.nodes());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = log_sphere_weight(grid.n_dim(), grid.r()[j]);
  return out;
}

Diagnostics diagnose_with(const RadialGrid& grid, const LambdaFunction& lambda,
                          std::span<const double> log_phi, double t, std::span<const double> u,
                          double support_threshold) {
  const auto& w = grid.weights();
  Diagnostics d{};
  d.t = t;
  d.sup_norm = k::max_abs(u);
  d.l2 = std::sqrt(k::weighted_abs_pow_sum(w, u, 2.0));
  d.G = k::weighted_sum(w, u);
  const double log_lambda = lambda.log_value(t);
  double g1 = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] != 0.0) g1 += w[j] * u[j] * std::exp(log_lambda + log_phi[j]);
  }
  d.G1 = g1;
  d.support_radius = std::isfinite(d.sup_norm) ? support_radius(grid, u, support_threshold) : 0.0;
  return d;
}

}  // namespace

Diagnostics diagnose(const RadialGrid& grid, int m, double t, std::span<const double> u,
                     double support_threshold) {
  const auto log_phi = log_test_weight(grid);
  return diagnose_with(grid, LambdaFunction(m), log_phi, t, u, support_threshold);
}

Trajectory solve(const SolverConfig& config, const RadialGrid& grid, std::span<const double> u0,
                 std::span<const double> u1, const SolveOptions& options) {
  config.validate();
  const std::size_t N = grid.nodes();
  if (u0.size() != N || u1.size() != N) throw std::invalid_argument("solve: data size mismatch");
  const int m = config.params.m;
  if (config.params.n != grid.n_dim()) throw std::invalid_argument("solve: params.n differs from grid");
  if (options.require_domain_cover && !grid.covers(m, config.params.M, config.t_max)) {
    throw std::domain_error("solve: grid radius too small for t_max (finite-speed bound)");
  }

  const bool w_form = grid.n_dim() == 3;
  const auto& r = grid.r();
  const double dr = grid.dr();
  const double inv_dr2 = 1.0 / (dr * dr);
  const double sigma = static_cast<double>(config.sigma);
  const double p = config.params.p;

  Trajectory traj;
  traj.initial_scale = std::max(k::max_abs(u0), k::max_abs(u1));
  if (!std::isfinite(traj.initial_scale)) throw std::domain_error("solve: non-finite data");
  traj.blowup_threshold =
      config.blowup_factor * (traj.initial_scale > 0.0 ? traj.initial_scale : 1.0);

  // y is w = r u for n = 3 and u otherwise.
  std::vector<double> y(u0.begin(), u0.end()), vy(u1.begin(), u1.end());
  if (w_form) {
    for (std::size_t j = 0; j < N; ++j) {
      y[j] *= r[j];
      vy[j] *= r[j];
    }
  }
  std::vector<double> acc(N), src(N, 0.0), ext(N, 0.0), u(N), v(N);

  auto to_u = [&](const std::vector<double>& yy, std::vector<double>& uu) {
    if (!w_form) {
      std::copy(yy.begin(), yy.end(), uu.begin());
      return;
    }
    for (std::size_t j = 1; j < N; ++j) uu[j] = yy[j] / r[j];
    // w = u(0) r + O(r^3)
    uu[0] = (8.0 * yy[1] - yy[2]) / (6.0 * dr);
  };

  auto accelerate = [&](std::size_t node, double t) {
    const double coef = (m == 0 ? 1.0 : std::pow(t, m)) * inv_dr2;
    const bool have_ext = static_cast<bool>(options.source);
    if (config.sigma != 0) {
      if (w_form) {
        k::power_source_w(y, r, sigma, p, config.power, src);
      } else {
        k::power_source_u(y, sigma, p, config.power, src);
      }
    } else if (have_ext) {
      std::fill(src.begin(), src.end(), 0.0);
    }
    if (have_ext) {
      std::fill(ext.begin(), ext.end(), 0.0);
      options.source(node, t, ext);
      if (w_form) {
        for (std::size_t j = 0; j < N; ++j) src[j] += r[j] * ext[j];
      } else {
        k::axpy(1.0, ext, src);
      }
    }
    if (w_form) {
      k::accel_w(y, coef, src, acc);
    } else {
      k::accel_radial(y, grid.flux_plus(), grid.flux_minus(), coef, src, acc);
    }
  };

  LambdaFunction lambda(m);
  std::vector<double> log_phi;
  if (options.record) log_phi = log_test_weight(grid);
  auto snapshot = [&](double t) {
    traj.states.push_back(FieldState{t, u, v});
    traj.diagnostics.push_back(diagnose_with(grid, lambda, log_phi, t, u, config.support_threshold));
  };

  double t = 0.0;
  std::size_t step = 0;
  to_u(y, u);
  to_u(vy, v);
  if (options.record) snapshot(0.0);
  bool keep_going = true;
  if (options.observer) keep_going = options.observer(StepView{0, 0.0, u, v});
  accelerate(0, 0.0);

  // Steps follow the dt law without clipping to output times: a periodic
  // perturbation of h near the Courant limit excites parametric growth of the
  // grid-scale modes. Snapshots inside a step come from cubic Hermite
  // interpolation of (y, y', y'') at the step ends. Only the last step is
  // shortened to land on t_max.
  std::vector<double> y_prev(N), vy_prev(N), acc_prev(N), yi(N), vyi(N);
  auto hermite = [](double s, double h, double f0, double d0, double f1, double d1) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * f1 +
           (s3 - s2) * h * d1;
  };

  std::size_t out_index = 1;
  const double tol = 1e-12 * std::max(1.0, config.t_max);
  while (keep_going && t < config.t_max - tol) {
    double h = step_size(config, dr, t);
    if (h < config.dt_min) {
      traj.terminated = Termination::StepFailure;
      break;
    }
    const bool last = t + h >= config.t_max - tol;
    if (last) h = config.t_max - t;
    if (options.record) {
      std::copy(y.begin(), y.end(), y_prev.begin());
      std::copy(vy.begin(), vy.end(), vy_prev.begin());
      std::copy(acc.begin(), acc.end(), acc_prev.begin());
    }
    const double t_prev = t;

    k::axpy(0.5 * h, acc, vy);
    k::axpy(h, vy, y);
    t = last ? config.t_max : t + h;
    ++step;
    accelerate(step, t);
    k::axpy(0.5 * h, acc, vy);

    to_u(y, u);
    to_u(vy, v);
    const double sup = k::max_abs(u);
    if (!std::isfinite(sup) || sup > traj.blowup_threshold) {
      traj.terminated = Termination::BlowupDetected;
      if (options.record && std::isfinite(sup)) snapshot(t);
      break;
    }
    if (options.observer) keep_going = options.observer(StepView{step, t, u, v});
    if (!options.record) continue;

    for (;;) {
      const double t_out = std::min(static_cast<double>(out_index) * config.output_dt, config.t_max);
      if (t_out > t + tol) break;
      if (t_out >= t - tol) {
        snapshot(t);
      } else {
        const double sfrac = (t_out - t_prev) / h;
        for (std::size_t j = 0; j < N; ++j) {
          yi[j] = hermite(sfrac, h, y_prev[j], vy_prev[j], y[j], vy[j]);
          vyi[j] = hermite(sfrac, h, vy_prev[j], acc_prev[j], vy[j], acc[j]);
        }
        to_u(yi, u);
        to_u(vyi, v);
        snapshot(t_out);
        to_u(y, u);
        to_u(vy, v);
      }
      if (t_out >= config.t_max - tol) break;
      ++out_index;
    }
  }
  traj.t_end = t;
  traj.steps = step;
  return traj;
}

}  // namespace tricomi
