#include "tricomi/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "tricomi/specfun.hpp"

namespace tricomi {

RadialGrid::RadialGrid(int n_dim, double R, std::size_t J) : n_(n_dim), R_(R), J_(J) {
  if (n_dim < 3 || n_dim % 2 == 0) throw std::domain_error("RadialGrid: n must be odd and >= 3");
  if (!(R > 0.0) || !std::isfinite(R)) throw std::domain_error("RadialGrid: R must be positive");
  if (J < 4) throw std::domain_error("RadialGrid: need at least 4 cells");
  dr_ = R / static_cast<double>(J);

  const double area = sphere_area(n_);
  const double n = static_cast<double>(n_);
  r_.resize(J + 1);
  weights_.assign(J + 1, 0.0);
  fp_.assign(J + 1, 0.0);
  fm_.assign(J + 1, 0.0);
  for (std::size_t j = 0; j <= J; ++j) r_[j] = static_cast<double>(j) * dr_;

  if (n_ == 3) {
    for (std::size_t j = 0; j <= J; ++j) weights_[j] = area * r_[j] * r_[j] * dr_;
    return;
  }

  // Shell j spans [r_{j-1/2}, r_{j+1/2}], shell 0 is the ball of radius dr/2.
  // Δu at the centre uses the ghost u_{-1} = u_1: n * 2 (u_1 - u_0) / dr^2.
  weights_[0] = area * std::pow(0.5 * dr_, n) / n;
  fp_[0] = 2.0 * n;
  for (std::size_t j = 1; j <= J; ++j) {
    const double lo = r_[j] - 0.5 * dr_;
    const double hi = r_[j] + 0.5 * dr_;
    const double vol = (std::pow(hi, n) - std::pow(lo, n)) / n;  // per unit solid angle
    weights_[j] = area * vol;
    fp_[j] = std::pow(hi, n - 1.0) * dr_ / vol;
    fm_[j] = std::pow(lo, n - 1.0) * dr_ / vol;
  }
}

RadialGrid RadialGrid::for_run(int n_dim, int m, double M, double t_max, double dr) {
  if (!(dr > 0.0)) throw std::domain_error("RadialGrid::for_run: dr must be positive");
  const double needed = M + phi_speed(m, t_max) + 10.0 * dr;
  const auto J = static_cast<std::size_t>(std::ceil(needed / dr - 1e-9)) + 1;
  return RadialGrid(n_dim, static_cast<double>(J) * dr, J);
}

bool RadialGrid::covers(int m, double M, double t) const {
  return R_ >= M + phi_speed(m, t) + 10.0 * dr_ - 1e-12 * R_;
}

}  // namespace tricomi
