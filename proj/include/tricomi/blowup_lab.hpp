#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/grid.hpp"
#include "tricomi/solver.hpp"

namespace tricomi {

struct FunctionalSeries {
  std::vector<double> times;
  std::vector<double> G;               // int u dx
  std::vector<double> G1;              // int u psi dx, psi = lambda(t) phi(x)
  std::vector<double> denom;           // (int_{|x| <= M + phi(t)} psi^{p/(p-1)} dx)^{p-1}
  std::vector<double> power_integral;  // int |u|^p dx
};

/// Functionals of every snapshot of `traj`. Needs at least two snapshots.
FunctionalSeries functional_series(const Trajectory& traj, const RadialGrid& grid,
                                   const ModelParams& params);

/// t^{-mp/4} (M + phi(t))^{(n-1)(p-1) - (n-1)p/2}, the shape the denominator is
/// bounded by.
double denominator_envelope(const ModelParams& params, double t);

struct RiccatiProblem {
  double C0 = 1.0, C1 = 1.0, R = 1.0;
  double alpha = 1.0, q = 0.0, p = 2.0;
  double a = 0.0;        // start time
  double G_a = 1.0;      // G(a)
  double Gp_a = 0.0;     // G'(a) >= 0
  double horizon = 1e4;  // final time

  void validate() const;
};

/// The comparison problem built from blowup_parameters(m, n, p):
/// a = 0, G(0) = C0 R^alpha, G'(0) = 0.
RiccatiProblem riccati_problem_for(int m, int n, double p, double C0, double C1, double R,
                                   double horizon);

struct RiccatiResult {
  std::optional<double> blowup_time;  // first time G > 1e12
  double t_final;
  double G_final;
  /// log(G(t_final)/G(a)) / log((R+t_final)/(R+a)): effective power-law growth.
  double growth_exponent;
};

/// Integrates  G'' = C1 (R+t)^{-q} max(G, C0 (R+t)^alpha)^p  with adaptive
/// Dormand-Prince steps. The max keeps the lower bound G >= C0 (R+t)^alpha
/// that the comparison argument assumes along the whole orbit.
RiccatiResult riccati_oracle(const RiccatiProblem& prob);

inline constexpr double kRiccatiCeiling = 1e12;

struct WeightedLowerBound {
  double t0;
  double c_lower;  // inf over snapshots with t >= t0 of G1(t) t^{m/2}
  bool holds;      // c_lower > 0
};

/// Throws std::domain_error when the initial data are not nonnegative and
/// nonzero, or when no snapshot lies at or after t0.
WeightedLowerBound weighted_lower_bound(const Trajectory& traj, const RadialGrid& grid,
                            const ModelParams& params, double t0 = 1.0);

enum class VerdictKind { BlewUp, SurvivedToTmax, Inconclusive };
std::string_view to_string(VerdictKind k);

struct BlowupVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double t_star = 0.0;      // BlewUp only
  double decay_rate = 0.0;  // d log sup / d log t over the second half, SurvivedToTmax only
  double sup_initial = 0.0;
  double sup_max = 0.0;
  double sup_final = 0.0;
  double G_final = 0.0;
  std::string note;
};

BlowupVerdict verdict_of(const Trajectory& traj);

struct SweepConfig {
  int m = 1;
  int n = 3;
  std::vector<double> p_grid;
  std::vector<double> amplitude_grid;
  double t_max = 20.0;
  double M = 1.0;
  double dr = 0.02;
  Profile profile = Profile::CosineBump;
  SolverConfig base;  // cfl, dt bounds, thresholds, output spacing
};

struct SweepCell {
  int m, n;
  double p;
  double amplitude;
  BlowupVerdict verdict;
};

/// One verdict per (p, amplitude) cell in row-major order (p outer). Cells
/// run concurrently; a failing cell becomes Inconclusive.
std::vector<SweepCell> sweep(const SweepConfig& config);

}  // namespace tricomi
