#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tricomi {

/// Values of the two fundamental Fourier multipliers of  v_tt - t^m Δv = 0
/// at time t and frequency |xi| = omega.
///   V1: V1(0) = 1, V1'(0) = 0      V2: V2(0) = 0, V2'(0) = 1
struct PropagatorSample {
  double t;
  double omega;
  double V1, V2;
  double dV1, dV2;

  double wronskian() const { return V1 * dV2 - V2 * dV1; }
};

/// Mode solution of  c'' + t^m omega^2 c = 0  through the Bessel closed form
///   V1 = Gamma(1-nu) (x/2)^nu J_{-nu}(x),   V2 = t Gamma(1+nu) (x/2)^{-nu} J_nu(x)
/// with nu = 1/(m+2) and x = omega phi(t). Below x = 1e-3 the six-term
/// Taylor series of the ODE is used instead.
PropagatorSample mode_solution(int m, double omega, double t);

/// V1 through the Kummer-function representation
///   V1 = e^{-z/2} Phi(m/(2(m+2)), m/(m+2); z),  z = 2i phi(t) omega,
/// summed in extended precision. Requires |z| <= 20 (throws std::out_of_range
/// otherwise) and throws std::runtime_error if the imaginary residue exceeds
/// 1e-8.
double kummer_V1(int m, double omega, double t);

/// The complex value e^{-z/2} Phi(a, 2a; z) before the real part is taken.
std::complex<double> kummer_V1_complex(int m, double omega, double t);

struct DecayProfile {
  double sup_normalized;
  std::vector<double> x;       // phi(t) omega
  std::vector<double> values;  // |V1| x^{m/(2(m+2))}
};

/// sup over the grid of |V1| (phi omega)^{m/(2(m+2))}. Every grid value must
/// be >= 1 (std::domain_error otherwise).
DecayProfile symbol_decay_profile(int m, std::span<const double> phi_omega_grid);

/// Log-spaced grid of `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

/// Fitted log-log slope of the WKB amplitude sqrt(V1^2 + (V1'/(omega t^{m/2}))^2)
/// against phi(t), maximised over a frequency band, on phi in [phi_lo, phi_hi].
/// The large-phi value approaches -m/(2(m+2)).
double dispersive_decay_slope(int m, double omega_lo, double omega_hi, double phi_lo,
                              double phi_hi);

}  // namespace tricomi
