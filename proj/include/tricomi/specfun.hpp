#pragma once

#include <cstdint>

namespace tricomi {

/// Modified Bessel function of the second kind K_nu(x), x > 0, |nu| <= 5.
/// Temme's series for x <= 2, Steed's continued fraction above, and the
/// three-term recurrence to reach |nu| > 1/2. Throws std::domain_error for
/// x <= 0.
double bessel_K(double nu, double x);

/// e^x K_nu(x); avoids underflow for large x.
double bessel_K_scaled(double nu, double x);

/// Bessel function of the first kind J_nu(x) for x >= 0 and real nu
/// (negative non-integer orders included).
double bessel_J(double nu, double x);

/// log I_nu(x) for nu >= 0, x > 0. Positive-term series below x = 600 and the
/// Hankel expansion above.
double log_bessel_I(double nu, double x);

/// |S^{n-1}|, the surface area of the unit sphere in R^n.
double sphere_area(int n);

/// Light-cone radius (2/(m+2)) t^{(m+2)/2}.
double phi_speed(int m, double t);

/// Inverse of phi_speed in t.
double phi_speed_inverse(int m, double phi);

/// Integral of e^{x.w} over the unit sphere S^{n-1} for |x| = r, via
/// (2pi)^{n/2} r^{1-n/2} I_{n/2-1}(r).
double sphere_weight(int n, double r);
double log_sphere_weight(int n, double r);

/// Monte Carlo estimate of the same integral with `samples` uniform points
/// on the sphere drawn from a generator seeded with `seed`.
double sphere_weight_monte_carlo(int n, double r, std::uint64_t samples, std::uint64_t seed);

/// The decaying solution of  lambda'' = t^m lambda,  lambda(0) = 1,
/// lambda(inf) = 0, written as C_m sqrt(t) K_nu(phi(t)) with nu = 1/(m+2).
class LambdaFunction {
 public:
  explicit LambdaFunction(int m);

  struct Value {
    double value;
    double derivative;
  };

  /// Value and first derivative; t >= 0.
  Value operator()(double t) const;
  /// log lambda(t), finite for large t where lambda underflows.
  double log_value(double t) const;

  int m() const { return m_; }
  double nu() const { return nu_; }
  double normalization() const { return c_m_; }

 private:
  int m_;
  double nu_;
  double c_m_;
};

}  // namespace tricomi
