#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tricomi/grid.hpp"
#include "tricomi/norms.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/sine_transform.hpp"
#include "tricomi/solver.hpp"
#include "tricomi/specfun.hpp"

using namespace tricomi;
using std::numbers::pi;

namespace {

SolverConfig linear_config(int m, int n, double t_max) {
  SolverConfig c;
  c.params = {m, n, 2.0, 1.0, 1.0};
  c.sigma = 0;
  c.t_max = t_max;
  return c;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double e = 0;
  for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[j] - b[j]));
  return e;
}

// Final u of a run with data b(r) (u0) and c b(r) (u1).
std::vector<double> final_field(const SolverConfig& cfg, const RadialGrid& g, Profile prof,
                                double velocity = 1.0) {
  auto [u0, u1] = make_bump(g, cfg.params.M, cfg.params.amplitude, prof);
  for (auto& x : u1) x *= velocity;
  SolveOptions opt;
  opt.record = false;
  std::vector<double> last;
  opt.observer = [&](const StepView& s) {
    last.assign(s.u.begin(), s.u.end());
    return true;
  };
  auto tr = solve(cfg, g, u0, u1, opt);
  REQUIRE(tr.terminated == Termination::ReachedTmax);
  return last;
}

// Discrete L^2 distance between a coarse solution and a finer one restricted
// to the coarse nodes.
double coarse_gap(const RadialGrid& coarse, std::span<const double> uc, std::span<const double> uf,
                  std::size_t stride) {
  std::vector<double> d(uc.size());
  for (std::size_t j = 0; j < uc.size(); ++j) d[j] = uc[j] - uf[j * stride];
  return lq_norm(coarse, d, 2.0);
}

}  // namespace

TEST_CASE("bump data") {
  RadialGrid g(3, 4.0, 400);
  auto [z0, z1] = make_bump(g, 1.0, 0.0, Profile::CosineBump);
  CHECK(std::all_of(z0.begin(), z0.end(), [](double x) { return x == 0.0; }));
  CHECK(std::all_of(z1.begin(), z1.end(), [](double x) { return x == 0.0; }));

  for (Profile p : {Profile::CosineBump, Profile::Gaussian, Profile::Polynomial}) {
    auto [u0, u1] = make_bump(g, 1.0, 2.0, p);
    CHECK(u0 == u1);
    CHECK(u0[0] > 0);
    for (std::size_t j = 0; j < g.nodes(); ++j) {
      CHECK(u0[j] >= 0);
      if (g.r()[j] >= 1.0) CHECK(u0[j] == 0.0);
    }
    CHECK(bump_profile(p, 1.0, 0.0) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(make_bump(g, 4.0, 1.0, Profile::Gaussian), std::domain_error);

  // G(0) of the Gaussian profile against adaptive quadrature.
  RadialGrid fine(3, 2.0, 2000);
  auto [gu, gv] = make_bump(fine, 1.0, 1.0, Profile::Gaussian);
  double grid_integral = 0;
  for (std::size_t j = 0; j < fine.nodes(); ++j) grid_integral += fine.weights()[j] * gu[j];
  auto f = [](double r) { return 4 * pi * r * r * bump_profile(Profile::Gaussian, 1.0, r); };
  double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
  CHECK(grid_integral > 0);
  CHECK(std::abs(grid_integral - oracle) < 1e-8);
}

TEST_CASE("configuration checks") {
  auto c = linear_config(1, 3, 1.0);
  c.cfl = 1.5;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = linear_config(1, 3, 1.0);
  c.dt_min = 1.0;
  c.dt_max = 0.5;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = linear_config(1, 3, 1.0);
  c.sigma = 2;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = linear_config(1, 3, 1.0);
  c.power = kernels::Power::Signed;
  c.params.p = 2.5;
  CHECK_THROWS_AS(c.validate(), std::domain_error);

  auto cfg = linear_config(1, 3, 5.0);
  RadialGrid small(3, 2.0, 100);
  std::vector<double> z(small.nodes(), 0.0);
  CHECK_THROWS_AS(solve(cfg, small, z, z), std::domain_error);
  RadialGrid g5(5, 20.0, 100);
  std::vector<double> z5(g5.nodes(), 0.0);
  CHECK_THROWS_AS(solve(cfg, g5, z5, z5), std::invalid_argument);
  auto g = RadialGrid::for_run(3, 1, 1.0, 5.0, 0.05);
  std::vector<double> bad(g.nodes(), 0.0);
  bad[3] = NAN;
  CHECK_THROWS_AS(solve(cfg, g, bad, std::vector<double>(g.nodes(), 0.0)), std::domain_error);
}

TEST_CASE("time step law") {
  auto c = linear_config(2, 3, 10.0);
  c.dt_max = 1.0;
  double dr = 0.01;
  for (double t : {0.0, 0.5, 1.0, 2.0, 7.0}) {
    double h = step_size(c, dr, t);
    CHECK(h <= c.cfl * dr * std::min(1.0, std::pow(t, -1.0)) * (1 + 1e-15));
    CHECK(h == doctest::Approx(c.cfl * dr * std::min(1.0, t > 0 ? 1 / t : 1.0)));
  }
  c.dt_max = 1e-3;
  CHECK(step_size(c, dr, 0.0) == 1e-3);
  CHECK(effective_cfl_cap(3) == 1.0);
  CHECK(effective_cfl_cap(5) == doctest::Approx(0.95 * std::sqrt(0.4)));
  auto c5 = linear_config(0, 5, 1.0);
  CHECK(step_size(c5, dr, 0.0) == doctest::Approx(effective_cfl_cap(5) * dr));
}

TEST_CASE("zero data stays zero") {
  for (int n : {3, 5}) {
    auto cfg = linear_config(1, n, 2.0);
    auto g = RadialGrid::for_run(n, 1, 1.0, 2.0, 0.05);
    std::vector<double> z(g.nodes(), 0.0);
    auto tr = solve(cfg, g, z, z);
    CHECK(tr.terminated == Termination::ReachedTmax);
    for (const auto& s : tr.states) CHECK(max_diff(s.u, z) == 0.0);
    for (const auto& d : tr.diagnostics) {
      CHECK(d.sup_norm == 0.0);
      CHECK(d.support_radius == 0.0);
    }
  }
}

TEST_CASE("snapshots") {
  auto cfg = linear_config(1, 3, 2.05);
  cfg.output_dt = 0.25;
  auto g = RadialGrid::for_run(3, 1, 1.0, cfg.t_max, 0.02);
  auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::CosineBump);
  auto tr = solve(cfg, g, u0, u1);
  REQUIRE(tr.states.size() == 10);
  for (std::size_t i = 0; i + 1 < tr.states.size(); ++i) {
    CHECK(tr.states[i + 1].t > tr.states[i].t);
    CHECK(tr.diagnostics[i].t == tr.states[i].t);
  }
  CHECK(tr.states[3].t == doctest::Approx(0.75));
  CHECK(tr.states.back().t == cfg.t_max);
  CHECK(tr.t_end == cfg.t_max);
  // An interpolated snapshot and a run that lands on the same time differ only
  // by the O(dr^2) discretisation error.
  auto cfg2 = cfg;
  cfg2.t_max = 0.75;
  auto tr2 = solve(cfg2, g, u0, u1);
  CHECK(max_diff(tr.states[3].u, tr2.states.back().u) < 1e-3 * tr2.diagnostics.back().sup_norm);
}

TEST_CASE("exact Dirichlet mode for the wave equation") {
  double R = 10.0;
  RadialGrid g(3, R, 2048);
  double k = 2 * pi / R;
  std::vector<double> u0(g.nodes()), z(g.nodes(), 0.0);
  for (std::size_t j = 1; j < g.nodes(); ++j) u0[j] = std::sin(k * g.r()[j]) / g.r()[j];
  u0[0] = k;
  u0.back() = 0.0;
  auto cfg = linear_config(0, 3, 5.0);
  SolveOptions opt;
  opt.require_domain_cover = false;
  auto tr = solve(cfg, g, u0, z, opt);
  const auto& u = tr.states.back().u;
  double err = 0;
  for (std::size_t j = 0; j < g.nodes(); ++j) err = std::max(err, std::abs(u[j] - std::cos(k * 5.0) * u0[j]));
  CHECK(err <= 1e-6);
}

TEST_CASE("grid solution against the spectral reconstruction") {
  // Band-limited data built from Dirichlet modes of the ball with k <= 1.
  double R = 12.0;
  RadialGrid g(3, R, 2400);
  const int modes = 3;
  double a[modes] = {1.0, -0.4, 0.25}, b[modes] = {0.3, 0.5, -0.2};
  int l[modes] = {1, 2, 3};
  std::vector<double> u0(g.nodes(), 0.0), u1(g.nodes(), 0.0);
  auto mode = [&](double k, std::size_t j) { return j == 0 ? k : std::sin(k * g.r()[j]) / g.r()[j]; };
  for (int i = 0; i < modes; ++i) {
    double k = l[i] * pi / R;
    for (std::size_t j = 0; j < g.cells(); ++j) {
      u0[j] += a[i] * mode(k, j);
      u1[j] += b[i] * mode(k, j);
    }
  }
  auto cfg = linear_config(2, 3, 2.0);
  SolveOptions opt;
  opt.require_domain_cover = false;
  auto tr = solve(cfg, g, u0, u1, opt);
  for (const auto& s : tr.states) {
    if (s.t == 0) continue;
    std::vector<double> exact(g.nodes(), 0.0);
    for (int i = 0; i < modes; ++i) {
      double k = l[i] * pi / R;
      auto ms = mode_solution(2, k, s.t);
      for (std::size_t j = 0; j < g.cells(); ++j) exact[j] += (a[i] * ms.V1 + b[i] * ms.V2) * mode(k, j);
    }
    std::vector<double> d(g.nodes());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = s.u[j] - exact[j];
    CHECK(lq_norm(g, d, 2.0) <= 1e-5 * lq_norm(g, exact, 2.0));
  }
}

TEST_CASE("mode energy follows the propagator") {
  double R = 12.0;
  RadialGrid g(3, R, 2400);
  int l = 4;
  double k = l * pi / R;
  std::vector<double> u0(g.nodes(), 0.0), z(g.nodes(), 0.0);
  for (std::size_t j = 1; j < g.cells(); ++j) u0[j] = std::sin(k * g.r()[j]) / g.r()[j];
  u0[0] = k;
  for (int m : {1, 2}) {
    auto cfg = linear_config(m, 3, 3.0);
    cfg.output_dt = 0.25;
    SolveOptions opt;
    opt.require_domain_cover = false;
    auto tr = solve(cfg, g, u0, z, opt);
    SineTransform st(g.cells());
    std::vector<double> w(g.cells() - 1), c(g.cells() - 1);
    auto coefficient = [&](const std::vector<double>& f) {
      for (std::size_t j = 1; j < g.cells(); ++j) w[j - 1] = g.r()[j] * f[j];
      st.forward(w, c);
      return c[l - 1];
    };
    for (const auto& s : tr.states) {
      double cv = coefficient(s.u), cd = coefficient(s.v);
      double tm = std::pow(s.t, m);
      double energy = 0.5 * (cd * cd + tm * k * k * cv * cv);
      auto ms = mode_solution(m, k, s.t);
      double oracle = 0.5 * (ms.dV1 * ms.dV1 + tm * k * k * ms.V1 * ms.V1);
      CHECK(energy == doctest::Approx(oracle).epsilon(1e-5));
    }
  }
}

TEST_CASE("second-order convergence") {
  // Same radius for all three grids so the coarse nodes are shared.
  auto base = RadialGrid::for_run(3, 1, 1.0, 2.0, 0.04);
  RadialGrid g1(3, base.R(), base.cells()), g2(3, base.R(), 2 * base.cells()),
      g3(3, base.R(), 4 * base.cells());
  for (int sigma : {0, 1}) {
    auto cfg = linear_config(1, 3, 2.0);
    cfg.sigma = sigma;
    cfg.params.p = 3.0;
    auto u1 = final_field(cfg, g1, Profile::Gaussian);
    auto u2 = final_field(cfg, g2, Profile::Gaussian);
    auto u3 = final_field(cfg, g3, Profile::Gaussian);
    double e12 = coarse_gap(g1, u1, u2, 2);
    std::vector<double> u2_on_g1(g1.nodes());
    for (std::size_t j = 0; j < u2_on_g1.size(); ++j) u2_on_g1[j] = u2[2 * j];
    double e23 = coarse_gap(g1, u2_on_g1, u3, 4);
    double order = std::log2(e12 / e23);
    CAPTURE(sigma);
    CHECK(order >= 1.9);
  }
}

TEST_CASE("flux form in five dimensions") {
  // u = j1(kr)/(kr) is a radial Dirichlet eigenfunction of the ball of
  // radius x1/k in R^5, x1 the first positive root of tan x = x.
  const double x1 = 4.493409457909064;
  double k = 1.0, R = x1 / k;
  auto profile = [&](double r) {
    double x = k * r;
    if (x < 1e-3) return 1.0 / 3 - x * x / 30;
    return (std::sin(x) - x * std::cos(x)) / (x * x * x);
  };
  double errs[3];
  int idx = 0;
  for (std::size_t J : {std::size_t{100}, std::size_t{200}, std::size_t{400}}) {
    RadialGrid g(5, R, J);
    std::vector<double> u0(g.nodes()), z(g.nodes(), 0.0);
    for (std::size_t j = 0; j < g.nodes(); ++j) u0[j] = profile(g.r()[j]);
    u0.back() = 0.0;
    auto cfg = linear_config(0, 5, 5.0);
    SolveOptions opt;
    opt.require_domain_cover = false;
    auto tr = solve(cfg, g, u0, z, opt);
    double e = 0;
    for (std::size_t j = 0; j < g.nodes(); ++j)
      e = std::max(e, std::abs(tr.states.back().u[j] - std::cos(k * 5.0) * u0[j]));
    errs[idx++] = e;
  }
  CHECK(errs[2] < 1e-4);
  CHECK(std::log2(errs[0] / errs[1]) >= 1.9);
  CHECK(std::log2(errs[1] / errs[2]) >= 1.9);
}

TEST_CASE("degenerate start matches the Taylor expansion") {
  // u_tt = t u'' + u^2: u(T) = u0 + T u1 + T^2 u0^2 / 2 + O(T^3).
  auto g = RadialGrid::for_run(3, 1, 1.0, 0.1, 0.001);
  auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::Gaussian);
  for (auto& x : u1) x *= 0.5;
  double prev2 = 0, prev3 = 0;
  for (double T : {0.04, 0.02, 0.01}) {
    auto cfg = linear_config(1, 3, T);
    cfg.sigma = 1;
    cfg.params.p = 2.0;
    auto tr = solve(cfg, g, u0, u1);
    const auto& u = tr.states.back().u;
    double e2 = 0, e3 = 0;
    for (std::size_t j = 0; j < g.nodes(); ++j) {
      double first = u0[j] + T * u1[j];
      e2 = std::max(e2, std::abs(u[j] - first));
      e3 = std::max(e3, std::abs(u[j] - first - 0.5 * T * T * u0[j] * u0[j]));
    }
    if (prev2 > 0) {
      CHECK(prev2 / e2 >= 3.5);
      CHECK(prev3 / e3 >= 7.0);
    }
    prev2 = e2;
    prev3 = e3;
  }
}

TEST_CASE("step failure") {
  auto cfg = linear_config(1, 3, 1.0);
  auto g = RadialGrid::for_run(3, 1, 1.0, 1.0, 0.02);
  cfg.dt_min = 0.03;
  cfg.dt_max = 0.05;
  auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::CosineBump);
  auto tr = solve(cfg, g, u0, u1);
  CHECK(tr.terminated == Termination::StepFailure);
  CHECK(tr.t_end == 0.0);
}

TEST_CASE("blowup detection") {
  auto cfg = linear_config(0, 3, 10.0);
  cfg.sigma = 1;
  cfg.params.p = 2.0;
  cfg.params.amplitude = 20.0;
  auto g = RadialGrid::for_run(3, 0, 1.0, cfg.t_max, 0.02);
  auto [u0, u1] = make_bump(g, 1.0, 20.0, Profile::CosineBump);
  auto tr = solve(cfg, g, u0, u1);
  CHECK(tr.terminated == Termination::BlowupDetected);
  CHECK(tr.t_end < cfg.t_max);
  CHECK(tr.initial_scale == doctest::Approx(20.0));
  CHECK(tr.blowup_threshold == doctest::Approx(2e7));
  CHECK(tr.diagnostics.back().sup_norm > tr.blowup_threshold);
  CHECK(std::isfinite(tr.diagnostics.back().sup_norm));
}

TEST_CASE("observer can stop the run") {
  auto cfg = linear_config(1, 3, 2.0);
  auto g = RadialGrid::for_run(3, 1, 1.0, 2.0, 0.05);
  auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::CosineBump);
  SolveOptions opt;
  std::size_t seen = 0;
  opt.observer = [&](const StepView& s) {
    seen = s.step;
    return s.step < 10;
  };
  auto tr = solve(cfg, g, u0, u1, opt);
  CHECK(seen == 10);
  CHECK(tr.steps == 10);
  CHECK(tr.terminated == Termination::ReachedTmax);
  CHECK(tr.t_end < 2.0);
}

TEST_CASE("finite propagation speed") {
  auto g0 = RadialGrid(3, 4.0, 200);
  auto [b0, b1] = make_bump(g0, 1.0, 1.0, Profile::CosineBump);
  CHECK(support_radius(g0, b0, 1e-3) <= 1.0 + g0.dr());
  std::vector<double> z(g0.nodes(), 0.0);
  CHECK(support_radius(g0, z, 1e-3) == 0.0);
  CHECK_THROWS_AS(support_radius(g0, b0, 0.0), std::domain_error);

  for (int sigma : {0, 1}) {
    auto cfg = linear_config(2, 3, 2.0);
    cfg.sigma = sigma;
    cfg.params.p = 2.0;
    auto g = RadialGrid::for_run(3, 2, 1.0, 2.0, 0.02);
    auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::CosineBump);
    auto tr = solve(cfg, g, u0, u1);
    REQUIRE(tr.terminated == Termination::ReachedTmax);
    CHECK(tr.diagnostics.back().support_radius <= 3.0 + 3 * g.dr());
  }
}

TEST_CASE("integral of u is linear in time without forcing") {
  for (int n : {3, 5, 7}) {
    auto cfg = linear_config(1, n, 3.0);
    auto g = RadialGrid::for_run(n, 1, 1.0, 3.0, 0.02);
    auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::CosineBump);
    for (auto& x : u1) x *= 0.5;
    auto tr = solve(cfg, g, u0, u1);
    double G0 = tr.diagnostics.front().G, G1 = 0;
    for (std::size_t j = 0; j < g.nodes(); ++j) G1 += g.weights()[j] * u1[j];
    for (const auto& d : tr.diagnostics) CHECK(d.G == doctest::Approx(G0 + G1 * d.t).epsilon(1e-6));
  }
}

TEST_CASE("space-time norm") {
  auto g = RadialGrid(3, 6.0, 600);
  Trajectory zero;
  for (double t : {0.0, 0.5, 1.0}) zero.states.push_back({t, std::vector<double>(g.nodes(), 0.0), {}});
  CHECK(spacetime_norm(zero, g, 2.0) == 0.0);

  // u = (1 + t) b(r): the L^2 norm over [0,1] is sqrt(7/3) ||b||_{L^2}.
  Trajectory sep;
  std::vector<double> b(g.nodes());
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = std::exp(-g.r()[j] * g.r()[j]);
  for (int i = 0; i <= 1000; ++i) {
    double t = i * 1e-3;
    std::vector<double> u(b);
    for (auto& x : u) x *= 1 + t;
    sep.states.push_back({t, u, {}});
  }
  double expected = std::sqrt(7.0 / 3) * lq_norm(g, b, 2.0);
  CHECK(spacetime_norm(sep, g, 2.0) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(spacetime_norm(sep, g, 2.0, 0.0, 0.5) == doctest::Approx(std::sqrt((1.5 * 1.5 * 1.5 - 1) / 3) * lq_norm(g, b, 2.0)).epsilon(1e-6));

  // Refinement stability on a smooth run.
  double values[2];
  int i = 0;
  for (double dr : {0.02, 0.01}) {
    auto cfg = linear_config(1, 3, 3.0);
    cfg.output_dt = 0.02;
    auto gg = RadialGrid::for_run(3, 1, 1.0, 3.0, dr);
    auto [u0, u1] = make_bump(gg, 1.0, 1.0, Profile::CosineBump);
    values[i++] = spacetime_norm(solve(cfg, gg, u0, u1), gg, 22.0 / 7);
  }
  CHECK(std::abs(values[1] / values[0] - 1) < 0.01);
}

TEST_CASE("Sobolev norm sanity on smooth data") {
  auto g = RadialGrid(3, 4.0, 4000);
  auto [u0, u1] = make_bump(g, 1.0, 1.0, Profile::Gaussian);
  CHECK(sobolev_norm(g, u0, 0.0) == doctest::Approx(lq_norm(g, u0, 2.0)).epsilon(1e-10));
  double grad = 0;
  for (std::size_t j = 0; j + 1 < g.nodes(); ++j) {
    double rm = 0.5 * (g.r()[j] + g.r()[j + 1]);
    double d = (u0[j + 1] - u0[j]) / g.dr();
    grad += 4 * pi * rm * rm * d * d * g.dr();
  }
  CHECK(sobolev_norm(g, u0, 1.0) == doctest::Approx(std::sqrt(grad)).epsilon(1e-4));
}
