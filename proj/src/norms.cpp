#include "tricomi/norms.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <stdexcept>

#include "tricomi/kernels.hpp"
#include "tricomi/sine_transform.hpp"

namespace tricomi {

namespace k = kernels::omp;

double lq_norm(const RadialGrid& grid, std::span<const double> u, double q) {
  if (!(q >= 1.0)) throw std::domain_error("lq_norm: q must be >= 1");
  return std::pow(k::weighted_abs_pow_sum(grid.weights(), u, q), 1.0 / q);
}

namespace {

void require_three(const RadialGrid& grid, const char* who) {
  if (grid.n_dim() != 3) throw std::domain_error(std::string(who) + ": only n = 3 is supported");
}

// Sine coefficients of w = r u on the interior nodes.
std::vector<double> sine_coefficients(const RadialGrid& grid, std::span<const double> u) {
  const std::size_t J = grid.cells();
  if (u.size() != J + 1) throw std::invalid_argument("sine_coefficients: size mismatch");
  std::vector<double> w(J - 1), b(J - 1);
  for (std::size_t j = 1; j < J; ++j) w[j - 1] = grid.r()[j] * u[j];
  SineTransform(J).forward(w, b);
  return b;
}

double wavenumber(const RadialGrid& grid, std::size_t l) {
  return static_cast<double>(l) * std::numbers::pi / grid.R();
}

}  // namespace

double sobolev_norm(const RadialGrid& grid, std::span<const double> u, double s) {
  require_three(grid, "sobolev_norm");
  if (!(std::abs(s) <= 3.0)) throw std::domain_error("sobolev_norm: |s| must be <= 3");
  const auto b = sine_coefficients(grid, u);
  double sum = 0.0;
  for (std::size_t l = 1; l <= b.size(); ++l) {
    sum += std::pow(wavenumber(grid, l), 2.0 * s) * b[l - 1] * b[l - 1];
  }
  return std::sqrt(4.0 * std::numbers::pi * 0.5 * grid.R() * sum);
}

std::vector<double> fractional_derivative(const RadialGrid& grid, std::span<const double> u,
                                          double alpha) {
  require_three(grid, "fractional_derivative");
  auto b = sine_coefficients(grid, u);
  if (alpha != 0.0) {
    for (std::size_t l = 1; l <= b.size(); ++l) b[l - 1] *= std::pow(wavenumber(grid, l), alpha);
  }
  const std::size_t J = grid.cells();
  std::vector<double> w(J - 1);
  SineTransform(J).inverse(b, w);
  std::vector<double> out(J + 1, 0.0);
  const double dr = grid.dr();
  for (std::size_t j = 1; j < J; ++j) out[j] = w[j - 1] / grid.r()[j];
  const double w2 = J > 2 ? w[1] : 0.0;
  out[0] = (8.0 * w[0] - w2) / (6.0 * dr);
  return out;
}

SpacetimeAccumulator::SpacetimeAccumulator(const RadialGrid& grid, double q, double t_lo,
                                           double t_hi)
    : grid_(&grid), q_(q), t_lo_(t_lo), t_hi_(t_hi) {
  if (!(q >= 1.0)) throw std::domain_error("SpacetimeAccumulator: q must be >= 1");
  if (!(t_hi >= t_lo)) throw std::domain_error("SpacetimeAccumulator: empty window");
}

void SpacetimeAccumulator::add(double t, std::span<const double> u) {
  if (t < t_lo_ || t > t_hi_) return;
  add_integral(t, k::weighted_abs_pow_sum(grid_->weights(), u, q_));
}

void SpacetimeAccumulator::add_integral(double t, double spatial) {
  if (t < t_lo_ || t > t_hi_) return;
  if (started_) {
    if (!(t > last_t_)) throw std::invalid_argument("SpacetimeAccumulator: times must increase");
    integral_ += 0.5 * (t - last_t_) * (spatial + last_f_);
  }
  started_ = true;
  last_t_ = t;
  last_f_ = spatial;
}

double SpacetimeAccumulator::norm() const { return std::pow(integral_, 1.0 / q_); }

double spacetime_norm(const Trajectory& traj, const RadialGrid& grid, double q, double t_lo,
                      double t_hi) {
  SpacetimeAccumulator acc(grid, q, t_lo, t_hi);
  for (const auto& s : traj.states) acc.add(s.t, s.u);
  return acc.norm();
}

}  // namespace tricomi
