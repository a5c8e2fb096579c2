#include "tricomi/sine_transform.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace tricomi {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

// FFTW_ESTIMATE keeps plan selection, and therefore rounding, identical
// between runs.
fftw_plan plan_for(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // Planned in-place: the new-array execute interface requires matching placement.
  std::vector<double> buf(n);
  fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), buf.data(), buf.data(), FFTW_RODFT00,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) throw std::runtime_error("fftw: could not create RODFT00 plan");
  cache.emplace(n, p);
  return p;
}

}  // namespace

SineTransform::SineTransform(std::size_t cells) : cells_(cells) {
  if (cells < 2) throw std::domain_error("SineTransform: need at least 2 cells");
  plan_ = plan_for(cells - 1);
}

void SineTransform::forward(std::span<const double> interior, std::span<double> coeffs) const {
  if (interior.size() != size() || coeffs.size() != size()) {
    throw std::invalid_argument("SineTransform::forward: size mismatch");
  }
  // RODFT00 yields 2 sum_j x_j sin(pi (j+1)(k+1)/(N+1)).
  std::copy(interior.begin(), interior.end(), coeffs.begin());
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), coeffs.data(), coeffs.data());
  const double scale = 1.0 / static_cast<double>(cells_);
  for (double& c : coeffs) c *= scale;
}

void SineTransform::inverse(std::span<const double> coeffs, std::span<double> interior) const {
  if (interior.size() != size() || coeffs.size() != size()) {
    throw std::invalid_argument("SineTransform::inverse: size mismatch");
  }
  std::copy(coeffs.begin(), coeffs.end(), interior.begin());
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), interior.data(), interior.data());
  for (double& w : interior) w *= 0.5;
}

void sine_transform_reference(std::span<const double> interior, std::span<double> coeffs) {
  const std::size_t n = interior.size();
  const double cells = static_cast<double>(n + 1);
  for (std::size_t l = 1; l <= n; ++l) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      s += interior[j - 1] * std::sin(std::numbers::pi * static_cast<double>(l * j) / cells);
    }
    coeffs[l - 1] = 2.0 * s / cells;
  }
}

}  // namespace tricomi
