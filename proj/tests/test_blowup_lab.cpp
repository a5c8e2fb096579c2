#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "tricomi/blowup_lab.hpp"
#include "tricomi/specfun.hpp"

using namespace tricomi;

namespace {

struct Run {
  RadialGrid grid;
  Trajectory traj;
  ModelParams params;
};

Run run(int m, double p, double amplitude, double t_max, int sigma = 1, double dr = 0.02,
        double output_dt = 0.1, Profile profile = Profile::CosineBump) {
  SolverConfig c;
  c.params = {m, 3, p, 1.0, amplitude};
  c.sigma = sigma;
  c.t_max = t_max;
  c.output_dt = output_dt;
  auto g = RadialGrid::for_run(3, m, 1.0, t_max, dr);
  auto [u0, u1] = make_bump(g, 1.0, amplitude, profile);
  auto tr = solve(c, g, u0, u1);
  return {g, std::move(tr), c.params};
}

}  // namespace

TEST_CASE("functionals of a linear run") {
  auto r = run(1, 2.0, 1.0, 4.0, 0);
  auto fs = functional_series(r.traj, r.grid, r.params);
  REQUIRE(fs.times.size() == r.traj.states.size());
  CHECK(fs.G.size() == fs.times.size());
  CHECK(fs.G1.size() == fs.times.size());
  CHECK(fs.denom.size() == fs.times.size());
  double G0 = fs.G[0];
  double slope = 0;
  auto [u0, u1] = make_bump(r.grid, 1.0, 1.0, Profile::CosineBump);
  for (std::size_t j = 0; j < r.grid.nodes(); ++j) slope += r.grid.weights()[j] * u1[j];
  for (std::size_t i = 0; i < fs.times.size(); ++i) {
    CHECK(std::abs(fs.G[i] - (G0 + slope * fs.times[i])) <= 1e-6 * std::max(1.0, std::abs(fs.G[i])));
  }
  CHECK_THROWS(functional_series(Trajectory{}, r.grid, r.params));
}

TEST_CASE("functionals of the zero field") {
  auto r = run(1, 2.0, 0.0, 1.0, 1);
  auto fs = functional_series(r.traj, r.grid, r.params);
  for (std::size_t i = 0; i < fs.times.size(); ++i) {
    CHECK(fs.G[i] == 0.0);
    CHECK(fs.G1[i] == 0.0);
    CHECK(fs.power_integral[i] == 0.0);
  }
}

TEST_CASE("convexity and the second-derivative identity") {
  auto r = run(1, 1.5, 3.0, 6.0, 1, 0.02, 0.05);
  auto fs = functional_series(r.traj, r.grid, r.params);
  for (std::size_t i = 1; i + 1 < fs.times.size(); ++i) {
    double h = fs.times[i + 1] - fs.times[i];
    double second = (fs.G[i + 1] - 2 * fs.G[i] + fs.G[i - 1]) / (h * h);
    CHECK(second >= 0);
    CHECK(second == doctest::Approx(fs.power_integral[i]).epsilon(2e-3));
    CHECK(fs.G[i + 1] > fs.G[i]);
  }
}

TEST_CASE("denominator bound is stable under refinement") {
  double C[2];
  int i = 0;
  for (double dr : {0.02, 0.01}) {
    auto r = run(1, 1.5, 1.0, 10.0, 0, dr, 0.25);
    auto fs = functional_series(r.traj, r.grid, r.params);
    double c = 0;
    for (std::size_t k = 0; k < fs.times.size(); ++k) {
      if (fs.times[k] < 2.0) continue;
      c = std::max(c, fs.denom[k] / denominator_envelope(r.params, fs.times[k]));
    }
    CHECK(std::isfinite(c));
    CHECK(c > 0);
    C[i++] = c;
  }
  CHECK(C[1] == doctest::Approx(C[0]).epsilon(0.01));
}

TEST_CASE("denominator against quadrature") {
  // (int_{|x| <= M + phi} (lambda(t) phi(x))^{p/(p-1)} dx)^{p-1}
  ModelParams params{1, 3, 1.5, 1.0, 1.0};
  auto r = run(1, 1.5, 1.0, 3.0, 0, 0.005, 1.0);
  auto fs = functional_series(r.traj, r.grid, r.params);
  LambdaFunction lam(1);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (std::size_t k = 1; k < fs.times.size(); ++k) {
    double t = fs.times[k];
    double rho = 1.0 + phi_speed(1, t);
    double e = params.p / (params.p - 1);
    auto f = [&](double rr) { return 4 * M_PI * rr * rr * std::pow(lam(t).value * sphere_weight(3, rr), e); };
    double oracle = std::pow(ts.integrate(f, 0.0, rho), params.p - 1);
    CHECK(fs.denom[k] == doctest::Approx(oracle).epsilon(1e-2));
  }
}

TEST_CASE("Riccati oracle against the first integral") {
  // G'' = G^2, G(0) = 2, G'(0) = 0:  G'^2 = (2/3)(G^3 - 8), so the time to
  // reach the ceiling is int_2^{1e12} dG / sqrt((2/3)(G^3 - 8)).
  RiccatiProblem prob;
  prob.C0 = 2.0;
  prob.alpha = 0.0;
  prob.C1 = 1.0;
  prob.R = 1.0;
  prob.q = 0.0;
  prob.p = 2.0;
  prob.G_a = 2.0;
  prob.Gp_a = 0.0;
  prob.horizon = 100.0;
  auto res = riccati_oracle(prob);
  REQUIRE(res.blowup_time.has_value());
  CHECK(*res.blowup_time < 5.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  auto f = [](double G) { return 1.0 / std::sqrt(2.0 / 3 * (G * G * G - 8)); };
  double to_inf = ts.integrate(f, 2.0, 10.0) + es.integrate(f, 10.0, std::numeric_limits<double>::infinity());
  double tail = es.integrate(f, kRiccatiCeiling, std::numeric_limits<double>::infinity());
  CHECK(*res.blowup_time == doctest::Approx(to_inf - tail).epsilon(1e-6));
}

TEST_CASE("Riccati oracle on the comparison parameter sets") {
  auto prob = riccati_problem_for(1, 3, 1.5, 1.0, 1.0, 1.0, 1e4);
  CHECK(prob.alpha == doctest::Approx(2.375));
  CHECK(prob.q == doctest::Approx(2.25));
  CHECK(prob.G_a == doctest::Approx(1.0));
  auto res = riccati_oracle(prob);
  CHECK(res.blowup_time.has_value());
  CHECK(*res.blowup_time < 1e4);

  // (p-1) alpha far below q - 2 with a small C1.
  auto weak = riccati_problem_for(1, 3, 4.0, 1.0, 1e-3, 1.0, 1e3);
  REQUIRE(blowup_parameters(1, 3, 4.0).margin() < -5);
  auto wres = riccati_oracle(weak);
  CHECK_FALSE(wres.blowup_time.has_value());
  CHECK(wres.t_final == doctest::Approx(1e3));
  CHECK(std::isfinite(wres.growth_exponent));
  CHECK(wres.growth_exponent >= 0);
  CHECK(wres.growth_exponent < 0.1);

  RiccatiProblem bad;
  bad.C1 = 0;
  CHECK_THROWS_AS(riccati_oracle(bad), std::domain_error);
  bad = RiccatiProblem{};
  bad.p = 1.0;
  CHECK_THROWS_AS(riccati_oracle(bad), std::domain_error);
}

TEST_CASE("Riccati comparison monotonicity") {
  double times[3][3];
  const double values[3] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto prob = riccati_problem_for(1, 3, 1.5, values[i], values[j], 1.0, 1e5);
      auto res = riccati_oracle(prob);
      REQUIRE(res.blowup_time.has_value());
      times[i][j] = *res.blowup_time;
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j + 1 < 3; ++j) {
      CHECK(times[i][j + 1] <= times[i][j]);
      CHECK(times[j + 1][i] <= times[j][i]);
    }
  }
}

TEST_CASE("lower bound on the weighted functional") {
  auto blow = run(1, 1.5, 10.0, 20.0);
  REQUIRE(blow.traj.terminated == Termination::BlowupDetected);
  auto l = weighted_lower_bound(blow.traj, blow.grid, blow.params);
  CHECK(l.t0 == 1.0);
  CHECK(l.holds);
  CHECK(l.c_lower > 0);

  auto wave = run(0, 2.0, 5.0, 10.0);
  REQUIRE(wave.traj.terminated == Termination::ReachedTmax);
  auto l0 = weighted_lower_bound(wave.traj, wave.grid, wave.params);
  CHECK(l0.holds);

  auto zero = run(1, 1.5, 0.0, 2.0);
  CHECK_THROWS_AS(weighted_lower_bound(zero.traj, zero.grid, zero.params), std::domain_error);
}

TEST_CASE("verdicts") {
  auto survive = run(1, 3.0, 1e-3, 20.0, 1, 0.02, 0.5);
  auto v = verdict_of(survive.traj);
  CHECK(v.kind == VerdictKind::SurvivedToTmax);
  CHECK(v.decay_rate < 0);
  CHECK(v.sup_final < v.sup_initial);

  auto blow = run(1, 1.5, 10.0, 20.0, 1, 0.02, 0.5);
  auto b = verdict_of(blow.traj);
  CHECK(b.kind == VerdictKind::BlewUp);
  CHECK(b.t_star <= 20.0);
  CHECK(b.t_star == doctest::Approx(13.18).epsilon(0.01));

  auto zero = run(1, 3.0, 0.0, 5.0);
  CHECK(verdict_of(zero.traj).kind == VerdictKind::SurvivedToTmax);
}

TEST_CASE("sweep") {
  SweepConfig sc;
  sc.m = 1;
  sc.n = 3;
  sc.p_grid = {1.3, 1.5, 1.6, 3.0};
  sc.amplitude_grid = {0.0, 1e-3, 12.0};
  sc.t_max = 20.0;
  sc.base.output_dt = 0.5;
  auto cells = sweep(sc);
  REQUIRE(cells.size() == 12);
  double pc = exponent_table(1, 3).p_crit;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    CHECK(c.p == sc.p_grid[i / 3]);
    CHECK(c.amplitude == sc.amplitude_grid[i % 3]);
    CAPTURE(c.p);
    CAPTURE(c.amplitude);
    if (c.amplitude == 0.0) CHECK(c.verdict.kind == VerdictKind::SurvivedToTmax);
    if (c.p <= 1.6 && c.amplitude == 12.0) CHECK(c.verdict.kind == VerdictKind::BlewUp);
    if (c.verdict.kind == VerdictKind::BlewUp) CHECK((c.p < pc || c.amplitude >= 1.0));
    if (classify({1, 3, c.p, 1.0, 1.0}) == Regime::GlobalSmallData && c.amplitude > 0 &&
        c.amplitude <= 1e-3) {
      CHECK(c.verdict.kind == VerdictKind::SurvivedToTmax);
      CHECK(c.verdict.decay_rate < 0);
    }
  }

  // A failing cell is recorded, not thrown.
  SweepConfig broken = sc;
  broken.p_grid = {1.5};
  broken.amplitude_grid = {1.0};
  broken.t_max = 1.0;
  broken.base.dt_min = 0.04;
  auto bc = sweep(broken);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].verdict.kind == VerdictKind::Inconclusive);

  SweepConfig empty = sc;
  empty.p_grid.clear();
  CHECK_THROWS_AS(sweep(empty), std::domain_error);
}
