#pragma once

#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/grid.hpp"
#include "tricomi/solver.hpp"

namespace tricomi {

struct PicardSetup {
  /// params.amplitude is epsilon; sigma and power select |u|^p or ±u^p.
  SolverConfig config;
  double dr = 0.05;
  Profile profile = Profile::CosineBump;
  int k_max = 12;
  double stop_rel = 1e-10;           // converged once N_k <= stop_rel * M_0
  double divergence_factor = 10.0;   // diverged once M_k > factor * M_0
  /// Sample the sup over q in [q0, r] of fractional norms at q0, (q0+r)/2, r
  /// instead of ||u||_{L^r} + || |D|^{gamma(r)-1/(m+2)} u ||_{L^{q0}}.
  bool sampled_sup_norm = false;
};

struct IterationReport {
  std::vector<double> M;       // M_k, k = 0..k_stop
  std::vector<double> N;       // N_k = ||u_k - u_{k-1}||_{L^{q0}}, u_{-1} = 0
  std::vector<double> ratios;  // ratios[k] = N_k / N_{k-1} (ratios[0] = 0)
  bool converged = false;
  bool diverged = false;
  int k_stop = 0;
  double q0 = 0.0;
  double r = 0.0;
  double beta = 0.0;  // gamma(r) - 1/(m+2)
  /// ||u_{k+1} - u_k||_{L^{q0}} / ||u_k||_{L^{q0}} for one extra iterate
  /// fed with the last one; NaN unless converged.
  double fixed_point_residual = 0.0;
};

/// u_k solves the linear equation with the original data and forcing
/// sigma P(u_{k-1}), u_{-1} = 0, on a grid sized for config.t_max.
IterationReport iterate(const PicardSetup& setup);

/// Largest epsilon (by doubling and bisection from setup's amplitude) whose
/// first three contraction ratios N_{k+1}/N_k, k = 1..3, are below
/// target_ratio. Ratios of differences under 1e-13 M_0 count as contracting.
/// Returns 0 if no tested epsilon passes.
double epsilon_threshold(const PicardSetup& setup, double target_ratio = 0.9);

/// Exponent bookkeeping of the integer-p fixed-point argument: a split of
/// A = n/2 - 1/(m+2) - 4/((m+2)(p-1)) into p orders alpha_j and the matching
/// Lebesgue indices 1/q_j = (m+2)/((m+2)n+2) (alpha_j + 4/((m+2)(p-1))).
struct IndexSet {
  std::vector<exact::Rational> alpha;
  std::vector<exact::Rational> q_inv;
  exact::Rational sum_q_inv;
  bool sums_to_inverse_p0;  // sum 1/q_j == 1/p0 exactly
  bool within_range;        // q0 <= q_j <= ((m+2)n+2)(p-1)/4
};

/// Splits tried: equal orders, all order on one factor, half on each of two.
/// Requires integer p >= 2 with A >= 0 (std::domain_error otherwise).
std::vector<IndexSet> integer_power_index_sets(int m, int n, int p);

}  // namespace tricomi
