#include "tricomi/kernels.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

namespace tricomi::kernels {

double apply_power(double u, double p, Power kind) {
  const double a = std::pow(std::abs(u), p);
  if (kind == Power::Absolute) return a;
  const long long ip = std::llround(p);
  return (u < 0.0 && (ip % 2 != 0)) ? -a : a;
}

namespace serial {

void accel_w(std::span<const double> w, double coef, std::span<const double> src,
             std::span<double> out) {
  const std::size_t n = w.size();
  out[0] = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    out[j] = coef * (w[j + 1] - 2.0 * w[j] + w[j - 1]) + src[j];
  }
  out[n - 1] = 0.0;
}

void accel_radial(std::span<const double> u, std::span<const double> fp,
                  std::span<const double> fm, double coef, std::span<const double> src,
                  std::span<double> out) {
  const std::size_t n = u.size();
  out[0] = coef * fp[0] * (u[1] - u[0]) + src[0];
  for (std::size_t j = 1; j + 1 < n; ++j) {
    out[j] = coef * (fp[j] * (u[j + 1] - u[j]) - fm[j] * (u[j] - u[j - 1])) + src[j];
  }
  out[n - 1] = 0.0;
}

void axpy(double h, std::span<const double> x, std::span<double> y) {
  for (std::size_t j = 0; j < x.size(); ++j) y[j] += h * x[j];
}

void power_source_w(std::span<const double> w, std::span<const double> r, double sigma,
                    double p, Power kind, std::span<double> out) {
  out[0] = 0.0;
  for (std::size_t j = 1; j < w.size(); ++j) {
    out[j] = sigma * r[j] * apply_power(w[j] / r[j], p, kind);
  }
}

void power_source_u(std::span<const double> u, double sigma, double p, Power kind,
                    std::span<double> out) {
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = sigma * apply_power(u[j], p, kind);
}

double weighted_abs_pow_sum(std::span<const double> weights, std::span<const double> u,
                            double q) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += weights[j] * std::pow(std::abs(u[j]), q);
  return s;
}

double weighted_sum(std::span<const double> weights, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += weights[j] * u[j];
  return s;
}

double max_abs(std::span<const double> u) {
  double m = 0.0;
  for (double x : u) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace serial

namespace omp {

namespace {

// Block-ordered reduction: the block partition is fixed, so the summation
// order is the same for every thread count.
template <class Body>
double blocked_sum(std::size_t n, Body body) {
  const std::size_t nb = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(nb, 0.0);
  const long long nbl = static_cast<long long>(nb);
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (long long b = 0; b < nbl; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += body(j);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

void accel_w(std::span<const double> w, double coef, std::span<const double> src,
             std::span<double> out) {
  const long long n = static_cast<long long>(w.size());
  out[0] = 0.0;
#pragma omp parallel for schedule(static) if (n > static_cast<long long>(kParallelThreshold))
  for (long long j = 1; j < n - 1; ++j) {
    out[j] = coef * (w[j + 1] - 2.0 * w[j] + w[j - 1]) + src[j];
  }
  out[n - 1] = 0.0;
}

void accel_radial(std::span<const double> u, std::span<const double> fp,
                  std::span<const double> fm, double coef, std::span<const double> src,
                  std::span<double> out) {
  const long long n = static_cast<long long>(u.size());
  out[0] = coef * fp[0] * (u[1] - u[0]) + src[0];
#pragma omp parallel for schedule(static) if (n > static_cast<long long>(kParallelThreshold))
  for (long long j = 1; j < n - 1; ++j) {
    out[j] = coef * (fp[j] * (u[j + 1] - u[j]) - fm[j] * (u[j] - u[j - 1])) + src[j];
  }
  out[n - 1] = 0.0;
}

void axpy(double h, std::span<const double> x, std::span<double> y) {
  const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static) if (n > static_cast<long long>(kParallelThreshold))
  for (long long j = 0; j < n; ++j) y[j] += h * x[j];
}

void power_source_w(std::span<const double> w, std::span<const double> r, double sigma,
                    double p, Power kind, std::span<double> out) {
  const long long n = static_cast<long long>(w.size());
  out[0] = 0.0;
#pragma omp parallel for schedule(static) if (n > static_cast<long long>(kParallelThreshold))
  for (long long j = 1; j < n; ++j) {
    out[j] = sigma * r[j] * apply_power(w[j] / r[j], p, kind);
  }
}

void power_source_u(std::span<const double> u, double sigma, double p, Power kind,
                    std::span<double> out) {
  const long long n = static_cast<long long>(u.size());
#pragma omp parallel for schedule(static) if (n > static_cast<long long>(kParallelThreshold))
  for (long long j = 0; j < n; ++j) out[j] = sigma * apply_power(u[j], p, kind);
}

double weighted_abs_pow_sum(std::span<const double> weights, std::span<const double> u,
                            double q) {
  return blocked_sum(u.size(), [&](std::size_t j) { return weights[j] * std::pow(std::abs(u[j]), q); });
}

double weighted_sum(std::span<const double> weights, std::span<const double> u) {
  return blocked_sum(u.size(), [&](std::size_t j) { return weights[j] * u[j]; });
}

double max_abs(std::span<const double> u) {
  // Non-finite entries propagate as NaN through the sum of flags.
  const double bad = blocked_sum(u.size(), [&](std::size_t j) { return std::isfinite(u[j]) ? 0.0 : 1.0; });
  if (bad > 0.0) return std::numeric_limits<double>::quiet_NaN();
  const long long n = static_cast<long long>(u.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n > static_cast<long long>(kParallelThreshold))
  for (long long j = 0; j < n; ++j) m = std::max(m, std::abs(u[j]));
  return m;
}

}  // namespace omp

}  // namespace tricomi::kernels
