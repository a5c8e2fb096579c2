#include "tricomi/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tricomi/specfun.hpp"

namespace tricomi {

namespace {

constexpr double kSmallArgument = 1e-3;

// Six-term series of the two normalised solutions in powers of t^{m+2}.
PropagatorSample taylor_modes(int m, double omega, double t) {
  const double k = m + 2.0;
  const double w2 = omega * omega;
  const double tk = std::pow(t, k);
  PropagatorSample s{t, omega, 0.0, 0.0, 0.0, 0.0};
  double a = 1.0;  // coefficient of t^{j k} in V1
  double b = 1.0;  // coefficient of t^{1 + j k} in V2
  double pw = 1.0; // t^{j k}
  for (int j = 0; j < 6; ++j) {
    if (j > 0) {
      const double jk = j * k;
      a *= -w2 / (jk * (jk - 1.0));
      b *= -w2 / ((jk + 1.0) * jk);
      pw *= tk;
    }
    const double jk = j * k;
    s.V1 += a * pw;
    s.V2 += b * pw * t;
    if (j > 0) s.dV1 += a * jk * pw / t;
    s.dV2 += b * (jk + 1.0) * pw;
  }
  return s;
}

}  // namespace

PropagatorSample mode_solution(int m, double omega, double t) {
  if (m < 0) throw std::domain_error("mode_solution: m must be >= 0");
  if (!(omega > 0.0)) throw std::domain_error("mode_solution: omega must be > 0");
  if (t < 0.0) throw std::domain_error("mode_solution: t must be >= 0");
  if (t == 0.0) return {0.0, omega, 1.0, 0.0, 0.0, 1.0};

  const double x = omega * phi_speed(m, t);
  if (x < kSmallArgument) return taylor_modes(m, omega, t);

  const double nu = 1.0 / (m + 2.0);
  const double half = 0.5 * x;
  const double up = std::pow(half, nu);
  const double speed = omega * std::pow(t, 0.5 * m);
  PropagatorSample s{t, omega, 0.0, 0.0, 0.0, 0.0};
  const double g_minus = std::tgamma(1.0 - nu);
  const double g_plus = std::tgamma(1.0 + nu);
  s.V1 = g_minus * up * bessel_J(-nu, x);
  s.dV1 = -g_minus * up * speed * bessel_J(1.0 - nu, x);
  s.V2 = t * g_plus / up * bessel_J(nu, x);
  s.dV2 = t * g_plus / up * speed * bessel_J(nu - 1.0, x);
  return s;
}

std::complex<double> kummer_V1_complex(int m, double omega, double t) {
  if (m < 0) throw std::domain_error("kummer_V1: m must be >= 0");
  if (!(omega > 0.0)) throw std::domain_error("kummer_V1: omega must be > 0");
  if (t < 0.0) throw std::domain_error("kummer_V1: t must be >= 0");
  using cld = std::complex<long double>;
  const long double zabs = 2.0L * phi_speed(m, t) * omega;
  // a few ulps of slack so that z = 20 survives the round trip through omega
  if (zabs > 20.0L * (1.0L + 1e-14L)) {
    throw std::out_of_range("kummer_V1: |z| = " + std::to_string(static_cast<double>(zabs)) +
                            " exceeds 20");
  }
  const cld z(0.0L, zabs);
  const long double a = m / (2.0L * (m + 2.0L));
  const long double b = m / (m + 2.0L);
  // Phi(a, b; z) = sum (a)_k / (b)_k z^k / k!. For m = 0 the parameters
  // collapse to a = b = 0 along b = 2a, where (a)_k/(b)_k -> 1/2 for k >= 1.
  cld term(1.0L, 0.0L);
  cld sum = term;
  for (int k = 0; k < 400; ++k) {
    const long double ratio = (m == 0 && k == 0) ? 0.5L : (a + k) / (b + k);
    term *= ratio * z / static_cast<long double>(k + 1);
    sum += term;
    if (std::abs(term) < 1e-19L * std::abs(sum) && k > zabs) break;
  }
  const cld value = std::exp(-z / 2.0L) * sum;
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

double kummer_V1(int m, double omega, double t) {
  const auto v = kummer_V1_complex(m, omega, t);
  if (std::abs(v.imag()) > 1e-8) {
    throw std::runtime_error("kummer_V1: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw std::domain_error("log_grid: bad range");
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) g[i] = std::exp(a + (b - a) * i / (count - 1));
  g.back() = hi;
  return g;
}

DecayProfile symbol_decay_profile(int m, std::span<const double> grid) {
  if (m < 0) throw std::domain_error("symbol_decay_profile: m must be >= 0");
  DecayProfile out{0.0, {}, {}};
  out.x.reserve(grid.size());
  out.values.reserve(grid.size());
  const double expo = m / (2.0 * (m + 2.0));
  for (double x : grid) {
    if (x < 1.0) throw std::domain_error("symbol_decay_profile: grid values must be >= 1");
    // V1 depends on (t, omega) only through phi(t) omega; take omega = 1.
    const double t = phi_speed_inverse(m, x);
    const double v = std::abs(mode_solution(m, 1.0, t).V1) * std::pow(x, expo);
    out.x.push_back(x);
    out.values.push_back(v);
    out.sup_normalized = std::max(out.sup_normalized, v);
  }
  return out;
}

double dispersive_decay_slope(int m, double omega_lo, double omega_hi, double phi_lo,
                              double phi_hi) {
  const auto omegas = log_grid(omega_lo, omega_hi, 9);
  const auto phis = log_grid(phi_lo, phi_hi, 40);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double phi : phis) {
    const double t = phi_speed_inverse(m, phi);
    double amp = 0.0;
    for (double w : omegas) {
      const auto s = mode_solution(m, w, t);
      const double rate = w * std::pow(t, 0.5 * m);
      amp = std::max(amp, std::hypot(s.V1, s.dV1 / rate));
    }
    const double lx = std::log(phi), ly = std::log(amp);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(phis.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace tricomi
