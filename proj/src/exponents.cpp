#include "tricomi/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tricomi/errors.hpp"

namespace tricomi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive root of a p^2 + b p + c with c < 0 < a, without subtractive
// cancellation.
double positive_root(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return kNaN;
    const double p = -c / b;
    return p > 0.0 ? p : kNaN;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return kNaN;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  const double r1 = q / a;
  const double r2 = c / q;
  const double best = std::max(r1, r2);
  return best > 0.0 ? best : kNaN;
}

double bisect(const Quadratic& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_mn(int m, int n) {
  if (m < 0) throw std::domain_error("m must be >= 0, got " + std::to_string(m));
  if (n < 1) throw std::domain_error("n must be >= 1, got " + std::to_string(n));
}

}  // namespace

void ModelParams::validate() const {
  if (m < 0) throw std::domain_error("ModelParams: m must be >= 0");
  if (n < 1) throw std::domain_error("ModelParams: n must be >= 1");
  if (!(p > 1.0)) throw std::domain_error("ModelParams: p must be > 1");
  if (!(M > 0.0)) throw std::domain_error("ModelParams: M must be > 0");
  if (!(amplitude >= 0.0)) throw std::domain_error("ModelParams: amplitude must be >= 0");
}

Quadratic critical_quadratic(int m, int n) {
  const double k = m + 2.0;
  return {k * n / 2.0 - 1.0, k * (1.0 - n / 2.0) - 3.0, -k};
}

ExponentReport exponent_table(int m, int n) {
  check_mn(m, n);
  const Quadratic quad = critical_quadratic(m, n);
  const double root = positive_root(quad.a, quad.b, quad.c);

  if (std::isfinite(root)) {
    // quad(1) = -4 for every (m, n); widen the bracket until the sign flips.
    double hi = 10.0;
    while (quad(hi) < 0.0 && hi < 1e6) hi *= 2.0;
    const double bis = bisect(quad, 1.0, hi);
    if (std::abs(bis - root) > 1e-12 * std::max(1.0, root)) {
      throw ConsistencyError("critical root mismatch: formula " + std::to_string(root) +
                             " vs bisection " + std::to_string(bis));
    }
  }

  const double k = m + 2.0;
  const double kn = k * n;
  ExponentReport rep{};
  rep.p_crit = root;
  rep.p_conf = kn > 2.0 ? (kn + 6.0) / (kn - 2.0) : kNaN;
  const auto sf = strauss_fujita(n);
  rep.p_strauss = sf.p_strauss.value_or(kNaN);
  rep.p_fujita = sf.p_fujita;
  rep.N_hom = 1.0 + kn / 2.0;
  rep.q0 = kn > 2.0 ? 2.0 * (kn + 2.0) / (kn - 2.0) : kNaN;
  rep.p0 = 2.0 * (kn + 2.0) / (kn + 6.0);
  const double den = k * (n - 2.0) - 2.0;
  rep.small_data_upper = den > 0.0 ? (k * (n - 2.0) + 6.0) / den : kInf;
  return rep;
}

StraussFujita strauss_fujita(int n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  StraussFujita out{std::nullopt, 1.0 + 2.0 / n};
  if (n >= 2) out.p_strauss = positive_root(n - 1.0, -(n + 1.0), -2.0);
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Blowup: return "Blowup";
    case Regime::Gap: return "Gap";
    case Regime::GlobalSmallData: return "GlobalSmallData";
    case Regime::GlobalIntegerPower: return "GlobalIntegerPower";
    case Regime::LowDimension: return "LowDimension";
  }
  return "?";
}

Regime classify(const ModelParams& params) {
  params.validate();
  if (params.n < 3) return Regime::LowDimension;
  const auto rep = exponent_table(params.m, params.n);
  const double p = params.p;
  if (p < rep.p_crit) return Regime::Blowup;
  if (p <= rep.p_conf) return Regime::Gap;
  if (p <= rep.small_data_upper) return Regime::GlobalSmallData;
  return Regime::GlobalIntegerPower;
}

double gamma_index(int m, int n, double q) {
  const double k = m + 2.0;
  return n / 2.0 - (k * n + 2.0) / (q * k);
}

GlobalIndices global_indices(int m, int n, double p) {
  check_mn(m, n);
  if (!(p > 1.0)) throw std::domain_error("p must be > 1");
  const double k = m + 2.0;
  GlobalIndices out{};
  out.s = n / 2.0 - 4.0 / (k * (p - 1.0));
  out.r = (k * n + 2.0) * (p - 1.0) / 4.0;
  out.gamma = gamma_index(m, n, out.r);
  out.s_at_least_critical = out.s >= 1.0 / k - 1e-14;
  return out;
}

double BlowupParams::margin() const { return (p - 1.0) * alpha - (q_riccati - 2.0); }

BlowupParams blowup_parameters(int m, int n, double p) {
  check_mn(m, n);
  if (!(p > 1.0)) throw std::domain_error("p must be > 1");
  const double k = m + 2.0;
  BlowupParams out{};
  out.p = p;
  out.alpha = p / 2.0 + 2.0 + k / 2.0 * (n - 1.0 - n * p / 2.0);
  out.q_riccati = k / 2.0 * n * (p - 1.0);
  out.alpha_above_one = out.alpha > 1.0;
  out.riccati_condition = out.margin() >= -1e-12;
  return out;
}

double p_crit_2k3_closed_form(int k) {
  const double kk = k;
  return (kk + 4.0 + std::sqrt(25.0 * kk * kk + 48.0 * kk + 32.0)) / (6.0 * kk + 4.0);
}

YagdjianInterval yagdjian_interval(int k) {
  if (k < 0) throw std::domain_error("k must be >= 0");
  const double kk = k;
  YagdjianInterval y{};
  y.k = k;
  y.lower = (3.0 * kk + 4.0) / (3.0 * kk + 2.0);
  y.upper = (3.0 * kk + 5.0 + std::sqrt(9.0 * kk * kk + 42.0 * kk + 33.0)) / (6.0 * kk + 4.0);
  y.p_crit_2k3 = exponent_table(2 * k, 3).p_crit;
  y.p_conf_2k3 = (3.0 * kk + 6.0) / (3.0 * kk + 2.0);
  y.global_upper = std::min((3.0 * kk + 5.0) / (3.0 * kk + 1.0), (5.0 * kk + 4.0) / (3.0 * kk + 4.0));
  if (!(y.lower < y.p_crit_2k3 && y.p_crit_2k3 < y.upper && y.upper < y.p_conf_2k3)) {
    throw ConsistencyError("exponent chain out of order at k = " + std::to_string(k));
  }
  return y;
}

YagdjianConditions yagdjian_conditions(double k, int n, double p) {
  const double k1 = k + 1.0;
  YagdjianConditions c{};
  c.first = (n + 1.0) * (p - 1.0) / (p + 1.0) <= k / k1;
  c.second = (2.0 / (p - 1.0) - n * k1 / (p + 1.0)) * p <= 1.0;
  const double mid = 1.0 / (p + 1.0);
  c.third = (p + 1.0) / (p * (p - 1.0) * n * k1) <= mid &&
            mid <= (k + 2.0) / ((n + 1.0) * (p - 1.0) * k1);
  return c;
}

namespace exact {

Rational q0(int m, int n) {
  const long long kn = (m + 2LL) * n;
  return Rational(2 * (kn + 2), kn - 2);
}

Rational p0(int m, int n) {
  const long long kn = (m + 2LL) * n;
  return Rational(2 * (kn + 2), kn + 6);
}

Rational gamma_index(int m, int n, Rational q) {
  const long long k = m + 2LL;
  return Rational(n, 2) - Rational(k * n + 2) / (q * Rational(k));
}

Rational r_index(int m, int n, Rational p) {
  const long long k = m + 2LL;
  return Rational(k * n + 2, 4) * (p - Rational(1));
}

Rational s_index(int m, int n, Rational p) {
  const long long k = m + 2LL;
  return Rational(n, 2) - Rational(4) / (Rational(k) * (p - Rational(1)));
}

}  // namespace exact

}  // namespace tricomi
