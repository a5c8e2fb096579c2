#pragma once

#include <limits>
#include <span>
#include <vector>

#include "tricomi/grid.hpp"
#include "tricomi/solver.hpp"

namespace tricomi {

/// (sum_j W_j |u_j|^q)^{1/q} with the grid's quadrature weights.
double lq_norm(const RadialGrid& grid, std::span<const double> u, double q);

/// Homogeneous Sobolev norm ||f||_{Ḣ^s} for n = 3 through the sine basis of
/// w = r f: ||f||^2 = 4 pi (R/2) sum_l k_l^{2s} b_l^2 with k_l = l pi / R.
/// Requires |s| <= 3 and n = 3 (std::domain_error otherwise).
double sobolev_norm(const RadialGrid& grid, std::span<const double> u, double s);

/// |D|^alpha u on the nodes, n = 3 only.
std::vector<double> fractional_derivative(const RadialGrid& grid, std::span<const double> u,
                                          double alpha);

/// Trapezoid-in-time accumulator of  int int |u|^q dx dt  for a stream of
/// samples in increasing t. Samples outside [t_lo, t_hi] are ignored.
class SpacetimeAccumulator {
 public:
  SpacetimeAccumulator(const RadialGrid& grid, double q, double t_lo = 0.0,
                       double t_hi = std::numeric_limits<double>::infinity());

  void add(double t, std::span<const double> u);
  /// Adds a precomputed spatial integral sum_j W_j |u_j|^q at time t.
  void add_integral(double t, double spatial);

  double integral() const { return integral_; }
  double norm() const;
  double q() const { return q_; }
  double last_time() const { return last_t_; }

 private:
  const RadialGrid* grid_;
  double q_, t_lo_, t_hi_;
  double integral_ = 0.0;
  double last_t_ = 0.0;
  double last_f_ = 0.0;
  bool started_ = false;
};

/// L^q norm over [t_lo, t_hi] x R^n of the trajectory snapshots.
double spacetime_norm(const Trajectory& traj, const RadialGrid& grid, double q,
                      double t_lo = 0.0, double t_hi = std::numeric_limits<double>::infinity());

}  // namespace tricomi
