#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/grid.hpp"
#include "tricomi/kernels.hpp"

namespace tricomi {

enum class Profile {
  Gaussian,    // exp(-a s^2/(1-s^2)), s = r/M: smooth, compactly supported
  CosineBump,  // cos^4(pi r / (2M)) for r < M
  Polynomial,  // (1 - s^2)^4
};
std::string_view to_string(Profile p);

/// u0 = u1 = amplitude * profile(r) on the grid nodes. Throws
/// std::domain_error if M >= R.
std::pair<std::vector<double>, std::vector<double>> make_bump(const RadialGrid& grid, double M,
                                                              double amplitude, Profile profile);

/// Profile value at radius r (unit amplitude).
double bump_profile(Profile profile, double M, double r);

struct SolverConfig {
  ModelParams params;
  int sigma = 1;               // sign in front of the power nonlinearity, 0 = linear
  kernels::Power power = kernels::Power::Absolute;
  double t_max = 1.0;
  double cfl = 0.9;             // capped at 0.95 sqrt(2/n) for n >= 5
  double dt_min = 1e-9;
  double dt_max = 0.05;
  double blowup_factor = 1e6;  // threshold = factor * max(sup|u0|, sup|u1|)
  double support_threshold = 1e-3;  // relative to sup|u|
  double output_dt = 0.1;      // snapshot spacing; t_max is always a snapshot

  /// Throws std::domain_error on an invalid combination.
  void validate() const;
};

struct FieldState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct Diagnostics {
  double t;
  double sup_norm;
  double l2;
  double G;       // integral of u
  double G1;      // integral of u lambda(t) phi(x)
  double support_radius;
};

enum class Termination { ReachedTmax, BlowupDetected, StepFailure };
std::string_view to_string(Termination t);

struct Trajectory {
  std::vector<FieldState> states;
  std::vector<Diagnostics> diagnostics;
  Termination terminated = Termination::ReachedTmax;
  double t_end = 0.0;
  std::size_t steps = 0;
  double initial_scale = 0.0;  // max(sup|u0|, sup|u1|)
  double blowup_threshold = 0.0;
};

/// Read-only view of the field after each completed step (and at t = 0).
struct StepView {
  std::size_t step;
  double t;
  std::span<const double> u;
  std::span<const double> v;
};

struct SolveOptions {
  /// Called at t = 0 and after every step; returning false stops the run
  /// (recorded as ReachedTmax at the current time).
  std::function<bool(const StepView&)> observer;
  /// Extra forcing F(t, r) added to the right-hand side in u form. `step`
  /// indexes the time node (0 at t = 0); the schedule depends only on the
  /// configuration, so node k falls at the same time in every run with that
  /// configuration and grid.
  std::function<void(std::size_t step, double t, std::span<double> out)> source;
  /// Skip snapshots and diagnostics entirely (the observer still runs).
  bool record = true;
  /// Require R >= M + phi(t_max) + 10 dr. Disable only for data that is an
  /// exact Dirichlet eigenfunction of the whole ball.
  bool require_domain_cover = true;
};

/// Time step taken from t (before clipping to the next output time):
/// c dr min(1, t^{-m/2}) capped at dt_max, with c = min(cfl, effective_cfl_cap(n)).
double step_size(const SolverConfig& config, double dr, double t);

/// Courant cap: 1 for n = 3; 0.95 sqrt(2/n) for n >= 5, where the centre node
/// of the flux-form operator carries the eigenvalue ~ 2n/dr^2.
double effective_cfl_cap(int n);

/// Solves  u_tt - t^m Δu = sigma P(u) + F  on the grid with velocity Verlet
/// (the kick-drift-kick form of leapfrog).
Trajectory solve(const SolverConfig& config, const RadialGrid& grid, std::span<const double> u0,
                 std::span<const double> u1, const SolveOptions& options = {});

/// Largest r_j with |u_j| > threshold * sup|u|; 0 for the zero field.
double support_radius(const RadialGrid& grid, std::span<const double> u, double threshold);

/// Diagnostics for one field.
Diagnostics diagnose(const RadialGrid& grid, int m, double t, std::span<const double> u,
                     double support_threshold);

}  // namespace tricomi
