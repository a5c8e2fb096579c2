#include "tricomi/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/bessel.hpp>

namespace tricomi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;

// Taylor coefficients of 1/Gamma(z) = sum_k c[k] z^(k+1).
constexpr double kRecipGamma[] = {
    1.0000000000000000,  0.5772156649015329,  -0.6558780715202538, -0.0420026350340952,
    0.1665386113822915,  -0.0421977345555443, -0.0096219715278770, 0.0072189432466630,
    -0.0011651675918591, -0.0002152416741149, 0.0001280502823882,  -0.0000201348547807,
    -0.0000012504934821, 0.0000011330272320,  -0.0000002056338417, 0.0000000061160950,
    0.0000000050020075,  -0.0000000011812746, 0.0000000001043427,  0.0000000000077823,
    -0.0000000000036968, 0.0000000000005100,  -0.0000000000000206, -0.0000000000000054,
    0.0000000000000014,  0.0000000000000001,
};

struct TemmeGammas {
  double gam1;  // (1/G(1-mu) - 1/G(1+mu)) / (2 mu)
  double gam2;  // (1/G(1-mu) + 1/G(1+mu)) / 2
  double gampl; // 1/G(1+mu)
  double gammi; // 1/G(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  // 1/G(1+mu) = sum_j c[j] mu^j, so even powers feed gam2 and odd powers gam1.
  const double mu2 = mu * mu;
  double even = 0.0, odd = 0.0;
  constexpr int n = sizeof(kRecipGamma) / sizeof(double);
  for (int j = (n - 1) & ~1; j >= 0; j -= 2) even = even * mu2 + kRecipGamma[j];
  for (int j = ((n - 1) & 1) ? n - 1 : n - 2; j >= 1; j -= 2) odd = odd * mu2 + kRecipGamma[j];
  TemmeGammas g{};
  g.gam2 = even;
  g.gam1 = -odd;
  g.gampl = g.gam2 - mu * g.gam1;
  g.gammi = g.gam2 + mu * g.gam1;
  return g;
}

// Scaled pair (e^x K_mu(x), e^x K_{mu+1}(x)) for |mu| <= 1/2.
std::pair<double, double> k_pair_scaled(double mu, double x) {
  if (x <= 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 10000; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double ex = std::exp(x);
    return {sum * ex, sum1 * 2.0 / x * ex};
  }

  // Steed's method on the continued fraction for K_{mu+1}/K_mu together with
  // the normalising series.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double kmu = std::sqrt(kPi / (2.0 * x)) / s;
  const double kmu1 = kmu * (mu + x + 0.5 - h) / x;
  return {kmu, kmu1};
}

}  // namespace

double bessel_K_scaled(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_K: x must be > 0");
  nu = std::abs(nu);
  const int n_up = static_cast<int>(std::floor(nu + 0.5));
  const double mu = nu - n_up;
  auto [k_lo, k_hi] = k_pair_scaled(mu, x);
  if (n_up == 0) return k_lo;
  for (int k = 1; k < n_up; ++k) {
    const double next = k_lo + 2.0 * (mu + k) / x * k_hi;
    k_lo = k_hi;
    k_hi = next;
  }
  return k_hi;
}

double bessel_K(double nu, double x) {
  const double scaled = bessel_K_scaled(nu, x);
  if (x > 700.0) return std::exp(std::log(scaled) - x);
  return scaled * std::exp(-x);
}

double bessel_J(double nu, double x) {
  if (x < 0.0) throw std::domain_error("bessel_J: x must be >= 0");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0 || nu == std::nearbyint(nu)) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return boost::math::cyl_bessel_j(nu, x);
}

double log_bessel_I(double nu, double x) {
  if (nu < 0.0) throw std::domain_error("log_bessel_I: nu must be >= 0");
  if (!(x > 0.0)) throw std::domain_error("log_bessel_I: x must be > 0");
  if (x < 600.0) {
    const double lx2 = 2.0 * std::log(0.5 * x);
    const double lt0 = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0);
    // Sum exp(lt_k - lt0) with running rescaling; the terms peak near k = x/2.
    double lt = 0.0;   // log of term k relative to term 0
    double lmax = 0.0;
    double sum = 1.0;  // relative to exp(lmax)
    for (int k = 1; k < 100000; ++k) {
      lt += lx2 - std::log(static_cast<double>(k)) - std::log(k + nu);
      if (lt > lmax) {
        sum = sum * std::exp(lmax - lt) + 1.0;
        lmax = lt;
      } else {
        const double term = std::exp(lt - lmax);
        sum += term;
        if (term < 1e-17 * sum && k > x) break;
      }
    }
    return lt0 + lmax + std::log(sum);
  }
  const double mu = 4.0 * nu * nu;
  double term = 1.0, series = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    series += term;
  }
  return x - 0.5 * std::log(2.0 * kPi * x) + std::log(series);
}

double sphere_area(int n) {
  if (n < 1) throw std::domain_error("sphere_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double phi_speed(int m, double t) {
  if (t <= 0.0) return 0.0;
  const double k = m + 2.0;
  return 2.0 / k * std::pow(t, k / 2.0);
}

double phi_speed_inverse(int m, double phi) {
  if (phi <= 0.0) return 0.0;
  const double k = m + 2.0;
  return std::pow(k * phi / 2.0, 2.0 / k);
}

double log_sphere_weight(int n, double r) {
  if (n < 2) throw std::domain_error("sphere_weight: n must be >= 2");
  if (r < 0.0) throw std::domain_error("sphere_weight: r must be >= 0");
  if (r == 0.0) return std::log(sphere_area(n));
  const double order = 0.5 * n - 1.0;
  return 0.5 * n * std::log(2.0 * kPi) + (1.0 - 0.5 * n) * std::log(r) + log_bessel_I(order, r);
}

double sphere_weight(int n, double r) { return std::exp(log_sphere_weight(n, r)); }

double sphere_weight_monte_carlo(int n, double r, std::uint64_t samples, std::uint64_t seed) {
  if (n < 2) throw std::domain_error("sphere_weight_monte_carlo: n must be >= 2");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    double first = normal(gen);
    double norm2 = first * first;
    for (int d = 1; d < n; ++d) {
      const double g = normal(gen);
      norm2 += g * g;
    }
    acc += std::exp(r * first / std::sqrt(norm2));
  }
  return sphere_area(n) * acc / static_cast<double>(samples);
}

LambdaFunction::LambdaFunction(int m) : m_(m) {
  if (m < 0) throw std::domain_error("LambdaFunction: m must be >= 0");
  nu_ = 1.0 / (m + 2.0);
  c_m_ = 2.0 * std::pow(m + 2.0, -nu_) / std::tgamma(nu_);
}

LambdaFunction::Value LambdaFunction::operator()(double t) const {
  if (t < 0.0) throw std::domain_error("lambda: t must be >= 0");
  if (t == 0.0) {
    const double slope = -c_m_ * std::tgamma(1.0 - nu_) * std::pow(m_ + 2.0, 1.0 - nu_) / 2.0;
    return {1.0, slope};
  }
  const double x = phi_speed(m_, t);
  const double decay = std::exp(-x);
  const double value = c_m_ * std::sqrt(t) * bessel_K_scaled(nu_, x) * decay;
  const double deriv = -c_m_ * std::pow(t, (m_ + 1.0) / 2.0) * bessel_K_scaled(1.0 - nu_, x) * decay;
  return {value, deriv};
}

double LambdaFunction::log_value(double t) const {
  if (t <= 0.0) return 0.0;
  const double x = phi_speed(m_, t);
  return std::log(c_m_) + 0.5 * std::log(t) - x + std::log(bessel_K_scaled(nu_, x));
}

}  // namespace tricomi
