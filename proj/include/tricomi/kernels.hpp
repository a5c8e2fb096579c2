#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops of the radial solver and the norm evaluations.
// `omp` is the production path. `serial` is the plain reference kept for the
// kernel tests and the benchmark; the two must agree to rounding.
//
// Reductions in `omp` sum fixed-size blocks and then the block totals in
// order, so results do not depend on the thread count.

namespace tricomi::kernels {

/// How the nonlinearity is applied to a value u.
enum class Power {
  Absolute,  // |u|^p
  Signed,    // u^p for integer p (sign follows parity)
};

inline constexpr std::size_t kReductionBlock = 1024;
inline constexpr std::size_t kParallelThreshold = 2048;

namespace serial {

/// out[j] = coef (w[j+1] - 2 w[j] + w[j-1]) + src[j] on interior nodes;
/// out[0] = out[J] = 0.
void accel_w(std::span<const double> w, double coef, std::span<const double> src,
             std::span<double> out);

/// out[j] = coef (fp[j] (u[j+1] - u[j]) - fm[j] (u[j] - u[j-1])) + src[j] for
/// j < J, out[J] = 0. fm[0] is ignored: the regularity ghost u[-1] = u[1] is
/// folded into fp[0].
void accel_radial(std::span<const double> u, std::span<const double> fp,
                  std::span<const double> fm, double coef, std::span<const double> src,
                  std::span<double> out);

/// y += h x
void axpy(double h, std::span<const double> x, std::span<double> y);

/// out[j] = sigma r[j] P(w[j] / r[j]), out[0] = 0.
void power_source_w(std::span<const double> w, std::span<const double> r, double sigma,
                    double p, Power kind, std::span<double> out);

/// out[j] = sigma P(u[j])
void power_source_u(std::span<const double> u, double sigma, double p, Power kind,
                    std::span<double> out);

/// sum_j weights[j] |u[j]|^q
double weighted_abs_pow_sum(std::span<const double> weights, std::span<const double> u,
                            double q);

double weighted_sum(std::span<const double> weights, std::span<const double> u);

/// max_j |u[j]|; NaN if any entry is not finite.
double max_abs(std::span<const double> u);

}  // namespace serial

// Same contracts as serial.
namespace omp {

void accel_w(std::span<const double> w, double coef, std::span<const double> src,
             std::span<double> out);
void accel_radial(std::span<const double> u, std::span<const double> fp,
                  std::span<const double> fm, double coef, std::span<const double> src,
                  std::span<double> out);
void axpy(double h, std::span<const double> x, std::span<double> y);
void power_source_w(std::span<const double> w, std::span<const double> r, double sigma,
                    double p, Power kind, std::span<double> out);
void power_source_u(std::span<const double> u, double sigma, double p, Power kind,
                    std::span<double> out);
double weighted_abs_pow_sum(std::span<const double> weights, std::span<const double> u,
                            double q);
double weighted_sum(std::span<const double> weights, std::span<const double> u);
double max_abs(std::span<const double> u);

}  // namespace omp

/// P(u) for a single value.
double apply_power(double u, double p, Power kind);

}  // namespace tricomi::kernels
