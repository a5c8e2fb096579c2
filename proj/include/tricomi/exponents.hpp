#pragma once

#include <optional>
#include <string_view>

#include <boost/rational.hpp>

namespace tricomi {

/// A problem instance for  u_tt - t^m Δu = |u|^p  in R^n with data
/// supported in the ball of radius M and scaled by `amplitude`.
struct ModelParams {
  int m = 1;
  int n = 3;
  double p = 2.0;
  double M = 1.0;
  double amplitude = 1.0;

  /// Throws std::domain_error naming the first violated field.
  void validate() const;
};

struct ExponentReport {
  double p_crit;       // positive root of the critical quadratic
  double p_conf;       // (N+2)/(N-2)
  double p_strauss;    // NaN when n < 2
  double p_fujita;     // 1 + 2/n
  double N_hom;        // 1 + (m+2)n/2
  double q0;           // 2((m+2)n+2)/((m+2)n-2)
  double p0;           // conjugate of q0
  double small_data_upper;  // ((m+2)(n-2)+6)/((m+2)(n-2)-2), +inf when the denominator is <= 0
};

/// All exponents for (m, n). The critical root is taken from the
/// cancellation-free quadratic formula and cross-checked by bisection; a
/// disagreement above 1e-12 raises ConsistencyError.
ExponentReport exponent_table(int m, int n);

/// Coefficients (a, b, c) of  a p^2 + b p + c = 0  whose positive root is p_crit.
struct Quadratic {
  double a, b, c;
  double operator()(double p) const { return (a * p + b) * p + c; }
};
Quadratic critical_quadratic(int m, int n);

struct StraussFujita {
  std::optional<double> p_strauss;  // empty for n = 1
  double p_fujita;
};
StraussFujita strauss_fujita(int n);

enum class Regime { Blowup, Gap, GlobalSmallData, GlobalIntegerPower, LowDimension };
std::string_view to_string(Regime r);

/// Gap is closed on both ends: p == p_crit and p == p_conf land in Gap.
Regime classify(const ModelParams& params);

struct GlobalIndices {
  double s;       // n/2 - 4/((m+2)(p-1))
  double r;       // ((m+2)n+2)(p-1)/4
  double gamma;   // gamma(q) at q = r
  bool s_at_least_critical;  // s >= 1/(m+2)
};
GlobalIndices global_indices(int m, int n, double p);

/// gamma(q) = n/2 - ((m+2)n+2)/(q(m+2)).
double gamma_index(int m, int n, double q);

struct BlowupParams {
  double alpha;       // p/2 + 2 + ((m+2)/2)(n-1-np/2)
  double q_riccati;   // ((m+2)/2) n (p-1)
  bool alpha_above_one;      // alpha > 1
  bool riccati_condition;  // (p-1) alpha >= q - 2  (to 1e-12)
  double margin() const;  // (p-1) alpha - (q-2)
  double p;
};
BlowupParams blowup_parameters(int m, int n, double p);

struct YagdjianInterval {
  int k;
  double lower;       // (3k+4)/(3k+2)
  double upper;       // (3k+5+sqrt(9k^2+42k+33))/(6k+4)
  double p_crit_2k3;
  double p_conf_2k3;  // (3k+6)/(3k+2)
  double global_upper;  // min{(3k+5)/(3k+1), (5k+4)/(3k+4)}
};
/// Throws ConsistencyError if lower < p_crit < upper < p_conf fails.
YagdjianInterval yagdjian_interval(int k);

/// Closed form of p_crit(2k, 3).
double p_crit_2k3_closed_form(int k);

/// The three constraint predicates of the earlier global-existence result for
/// u_tt - t^{2k} Δu = |u|^p (k real > 1/2), evaluated as stated.
struct YagdjianConditions {
  bool first, second, third;
  bool all() const { return first && second && third; }
};
YagdjianConditions yagdjian_conditions(double k, int n, double p);

// Exact index identities for integer (m, n).
namespace exact {

using Rational = boost::rational<long long>;

Rational q0(int m, int n);
Rational p0(int m, int n);
/// gamma(q) in exact arithmetic.
Rational gamma_index(int m, int n, Rational q);
/// r for rational p.
Rational r_index(int m, int n, Rational p);
/// s for rational p.
Rational s_index(int m, int n, Rational p);

}  // namespace exact

}  // namespace tricomi
