#include "tricomi/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tricomi/exponents.hpp"
#include "tricomi/kernels.hpp"
#include "tricomi/norms.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi {

namespace k = kernels::omp;

double homogeneous_q(int m, int n, double s) {
  const double mm = m + 2.0;
  return 2.0 * (mm * n + 2.0) / (mm * (n - 2.0 * s));
}

namespace {

SolverConfig linear_config(int m, double support, double t_max, double cfl) {
  SolverConfig sc;
  sc.params = ModelParams{m, 3, 2.0, support, 1.0};
  sc.sigma = 0;
  sc.t_max = t_max;
  sc.cfl = cfl;
  sc.output_dt = t_max;
  return sc;
}

std::vector<double> scaled_bump(const RadialGrid& grid, Profile profile, double M, double lambda,
                                double factor) {
  std::vector<double> b(grid.nodes());
  for (std::size_t j = 0; j < b.size(); ++j) {
    b[j] = factor * bump_profile(profile, M, lambda * grid.r()[j]);
  }
  return b;
}

// Tracks N(T) at the times where phi(T) crosses phi_first * 2^k.
class CauchyWatch {
 public:
  CauchyWatch(int m, double phi_first, double tol) : m_(m), next_(phi_first), tol_(tol) {}

  /// Returns true once the norm is Cauchy within tol.
  bool update(double t, double norm) {
    if (phi_speed(m_, t) < next_) return false;
    const bool done = have_prev_ && norm <= (1.0 + tol_) * prev_;
    prev_ = norm;
    have_prev_ = true;
    next_ *= 2.0;
    return done;
  }

 private:
  int m_;
  double next_;
  double tol_;
  double prev_ = 0.0;
  bool have_prev_ = false;
};

void finish_report(EstimateReport& rep) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& mr : rep.members) {
    rep.all_converged = rep.all_converged && mr.cauchy_converged;
    if (mr.ratio > 0.0) {
      lo = std::min(lo, mr.ratio);
      hi = std::max(hi, mr.ratio);
    }
  }
  rep.ratio = hi;
  rep.spread = hi > 0.0 ? hi / lo : 1.0;
}

template <class Fn>
void for_each_member(std::size_t count, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

WindowedNorm windowed_norm(int m, const RadialGrid& grid, std::span<const double> f,
                           std::span<const double> g, double q, double T, double cfl,
                           bool whole_ball) {
  double support = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] != 0.0 || g[j] != 0.0) support = grid.r()[j];
  }
  auto sc = linear_config(m, std::max(support, grid.dr()), T, cfl);
  SpacetimeAccumulator acc(grid, q);
  SolveOptions opts;
  opts.record = false;
  opts.require_domain_cover = !whole_ball;
  opts.observer = [&](const StepView& sv) {
    acc.add(sv.t, sv.u);
    return true;
  };
  const auto traj = solve(sc, grid, f, g, opts);
  return {acc.norm(), traj.t_end};
}

EstimateReport homogeneous_ratio(const HomogeneousSetup& setup) {
  const int m = setup.m;
  const double s = setup.s;
  const double s_min = 1.0 / (m + 2.0);
  if (!(s >= s_min - 1e-14 && s < 1.5)) {
    throw std::domain_error("homogeneous_ratio: need 1/(m+2) <= s < n/2");
  }
  if (setup.family.empty()) throw std::domain_error("homogeneous_ratio: empty family");
  const double q = homogeneous_q(m, 3, s);
  const double shift = 2.0 / (m + 2.0);

  EstimateReport rep;
  rep.q = q;
  rep.s = s;
  for (const auto& fm : setup.family) {
    if (!rep.family.empty()) rep.family += ";";
    rep.family += fm.label;
  }
  rep.members.resize(setup.family.size());

  for_each_member(setup.family.size(), [&](std::size_t i) {
    const auto& fm = setup.family[i];
    if (!(fm.lambda > 0.0)) throw std::domain_error("homogeneous_ratio: lambda must be positive");
    const double support = setup.M / fm.lambda;
    const double t_max = phi_speed_inverse(m, setup.phi_max);
    const RadialGrid grid = RadialGrid::for_run(3, m, support, t_max, setup.dr);
    const auto f = scaled_bump(grid, fm.profile, setup.M, fm.lambda, 1.0);
    const auto g =
        scaled_bump(grid, fm.profile, setup.M, fm.lambda, fm.velocity * std::pow(fm.lambda, shift));
    double data = sobolev_norm(grid, f, s);
    if (fm.velocity != 0.0) data += sobolev_norm(grid, g, s - shift);

    SpacetimeAccumulator acc(grid, q);
    CauchyWatch watch(m, std::max(0.5, 2.0 * support), setup.cauchy_tol);
    bool converged = false;
    SolveOptions opts;
    opts.record = false;
    opts.observer = [&](const StepView& sv) {
      acc.add(sv.t, sv.u);
      if (watch.update(sv.t, acc.norm())) converged = true;
      return !converged;
    };
    const auto traj = solve(linear_config(m, support, t_max, setup.cfl), grid, f, g, opts);
    const double norm = acc.norm();
    rep.members[i] = MemberResult{fm.label, fm.lambda, norm / data, norm, data, traj.t_end, converged};
  });
  finish_report(rep);
  return rep;
}

ScalingReport scaling_check(const ScalingSetup& setup, const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw std::domain_error("scaling_check: no lambda values");
  for (double l : lambdas) {
    if (!(l > 0.0)) throw std::domain_error("scaling_check: lambda must be positive");
  }
  const int m = setup.m;
  const double q = homogeneous_q(m, 3, setup.s);
  const double time_exp = 2.0 / (m + 2.0);
  const double T1 = phi_speed_inverse(m, setup.phi_window);
  const double cells = static_cast<double>(setup.cells);
  const double R1 = (setup.M + setup.phi_window) / (1.0 - 10.0 / cells) * (1.0 + 1e-9);
  constexpr int kSnapshots = 16;

  struct Run {
    double ratio;
    std::vector<std::vector<double>> snaps;
  };
  auto run = [&](double lambda) {
    const RadialGrid grid(3, R1 / lambda, setup.cells);
    const double T = T1 / std::pow(lambda, time_exp);
    const auto f = scaled_bump(grid, setup.profile, setup.M, lambda, 1.0);
    const std::vector<double> g(grid.nodes(), 0.0);
    auto sc = linear_config(m, setup.M / lambda, T, setup.cfl);
    sc.output_dt = T / kSnapshots;
    sc.dt_max = 1.0;
    SpacetimeAccumulator acc(grid, q);
    SolveOptions opts;
    opts.observer = [&](const StepView& sv) {
      acc.add(sv.t, sv.u);
      return true;
    };
    const auto traj = solve(sc, grid, f, g, opts);
    Run out{acc.norm() / sobolev_norm(grid, f, setup.s), {}};
    for (const auto& st : traj.states) out.snaps.push_back(st.u);
    return out;
  };

  const Run base = run(1.0);
  ScalingReport rep;
  rep.lambdas = lambdas;
  for (double lambda : lambdas) {
    const Run r = lambda == 1.0 ? base : run(lambda);
    rep.ratios.push_back(r.ratio);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(r.ratio / base.ratio - 1.0));
    const std::size_t count = std::min(r.snaps.size(), base.snaps.size());
    for (std::size_t i = 1; i < count; ++i) {
      double diff = 0.0, ref = 0.0;
      for (std::size_t j = 0; j < r.snaps[i].size(); ++j) {
        const double d = r.snaps[i][j] - base.snaps[i][j];
        diff += d * d;
        ref += base.snaps[i][j] * base.snaps[i][j];
      }
      if (ref > 0.0) rep.max_residual = std::max(rep.max_residual, std::sqrt(diff / ref));
    }
  }
  return rep;
}

InhomogeneousReport inhomogeneous_ratio(const InhomogeneousSetup& setup) {
  const int m = setup.m;
  const auto ex = exponent_table(m, 3);
  const double q = setup.q > 0.0 ? setup.q : ex.q0;
  if (!(q >= ex.q0 * (1.0 - 1e-14)) || !std::isfinite(q)) {
    throw std::domain_error("inhomogeneous_ratio: need q0 <= q < inf");
  }
  if (setup.family.empty()) throw std::domain_error("inhomogeneous_ratio: empty family");
  const double beta = std::max(0.0, gamma_index(m, 3, q) - 1.0 / (m + 2.0));
  const double p0 = ex.p0;
  const double q0 = ex.q0;
  // int_0^tau sin^{2 p0}(pi t / tau) dt
  const double chi_factor =
      std::sqrt(std::numbers::pi) * std::tgamma(p0 + 0.5) / std::tgamma(p0 + 1.0) / std::numbers::pi;

  InhomogeneousReport out;
  auto& rep = out.estimate;
  rep.q = q;
  rep.s = beta;
  for (const auto& fm : setup.family) {
    if (!rep.family.empty()) rep.family += ";";
    rep.family += fm.label;
  }
  rep.members.resize(setup.family.size());
  out.combined.assign(setup.family.size(), 0.0);

  for_each_member(setup.family.size(), [&](std::size_t i) {
    const auto& fm = setup.family[i];
    if (!(fm.lambda > 0.0 && fm.tau > 0.0)) {
      throw std::domain_error("inhomogeneous_ratio: lambda and tau must be positive");
    }
    const double support = setup.M / fm.lambda;
    const double t_max = std::max(phi_speed_inverse(m, setup.phi_max), 2.0 * fm.tau);
    const RadialGrid grid = RadialGrid::for_run(3, m, support, t_max, setup.dr);
    const auto b = scaled_bump(grid, fm.profile, setup.M, fm.lambda, fm.amplitude);
    const auto Db = beta > 0.0 ? fractional_derivative(grid, b, beta) : b;
    const double rhs = std::pow(fm.tau * chi_factor, 1.0 / p0) * lq_norm(grid, Db, p0);
    const std::vector<double> zero(grid.nodes(), 0.0);

    SpacetimeAccumulator acc_q(grid, q), acc_d(grid, q0);
    CauchyWatch watch(m, std::max({0.5, 2.0 * support, phi_speed(m, fm.tau)}), setup.cauchy_tol);
    bool converged = false;
    SolveOptions opts;
    opts.record = false;
    opts.source = [&](std::size_t, double t, std::span<double> F) {
      if (t >= fm.tau) return;
      const double c = std::sin(std::numbers::pi * t / fm.tau);
      const double chi = c * c;
      for (std::size_t j = 0; j < F.size(); ++j) F[j] = chi * b[j];
    };
    opts.observer = [&](const StepView& sv) {
      acc_q.add(sv.t, sv.u);
      if (beta > 0.0) {
        acc_d.add(sv.t, fractional_derivative(grid, sv.u, beta));
      } else {
        acc_d.add(sv.t, sv.u);
      }
      if (sv.t > fm.tau && watch.update(sv.t, acc_q.norm())) converged = true;
      return !converged;
    };
    const auto traj = solve(linear_config(m, support, t_max, setup.cfl), grid, zero, zero, opts);
    const double w_norm = acc_q.norm();
    const double ratio = rhs > 0.0 ? w_norm / rhs : 0.0;
    rep.members[i] = MemberResult{fm.label, fm.lambda, ratio, w_norm, rhs, traj.t_end, converged};
    out.combined[i] = rhs > 0.0 ? (w_norm + acc_d.norm()) / rhs : 0.0;
  });
  finish_report(rep);
  return out;
}

}  // namespace tricomi
