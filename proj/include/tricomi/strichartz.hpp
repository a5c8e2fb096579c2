#pragma once

#include <string>
#include <vector>

#include "tricomi/grid.hpp"
#include "tricomi/solver.hpp"

namespace tricomi {

/// Data f(x) = b(lambda |x|) with b a unit bump of radius M, and optionally
/// g = velocity * lambda^{2/(m+2)} b(lambda |x|) so that the pair rescales
/// together.
struct FamilyMember {
  std::string label;
  Profile profile = Profile::CosineBump;
  double lambda = 1.0;
  double velocity = 0.0;
};

struct MemberResult {
  std::string label;
  double lambda;
  double ratio;
  double spacetime;  // ||v||_{L^q([0,T] x R^3)}
  double data_norm;  // right-hand side of the estimate
  double T;          // time window used
  bool cauchy_converged;
};

struct EstimateReport {
  double ratio = 0.0;   // max over members
  double q = 0.0;
  double s = 0.0;
  std::string family;
  double spread = 1.0;  // max / min over members
  std::vector<MemberResult> members;
  bool all_converged = true;
};

/// q = 2((m+2)n+2)/((m+2)(n-2s)).
double homogeneous_q(int m, int n, double s);

struct HomogeneousSetup {
  int m = 0;
  double s = 0.5;
  double M = 1.0;
  double dr = 0.02;
  double cfl = 0.9;
  double phi_max = 64.0;     // longest window, in light-cone radius
  double cauchy_tol = 0.02;  // stop once N(phi) <= (1 + tol) N(phi/2)
  std::vector<FamilyMember> family;
};

/// Ratio ||v||_{L^q} / (||f||_{Ḣ^s} + ||g||_{Ḣ^{s-2/(m+2)}}) for each member,
/// n = 3. The window doubles in phi until the norm is Cauchy within
/// cauchy_tol or phi_max is reached (member flagged not converged).
/// Throws std::domain_error unless 1/(m+2) <= s < 3/2.
EstimateReport homogeneous_ratio(const HomogeneousSetup& setup);

struct WindowedNorm {
  double spacetime;
  double T;
};

/// ||v||_{L^q([0,T] x R^3)} for the linear flow of (f, g) on a given grid.
/// Skips the finite-speed domain check when `whole_ball` is set (for data that
/// is a Dirichlet eigenfunction).
WindowedNorm windowed_norm(int m, const RadialGrid& grid, std::span<const double> f,
                           std::span<const double> g, double q, double T, double cfl,
                           bool whole_ball = false);

struct ScalingSetup {
  int m = 2;
  double s = 0.5;
  double M = 1.0;
  double phi_window = 8.0;  // window for lambda = 1, in light-cone radius
  std::size_t cells = 1024;
  double cfl = 0.9;
  Profile profile = Profile::CosineBump;
};

struct ScalingReport {
  std::vector<double> lambdas;
  std::vector<double> ratios;
  double max_deviation = 0.0;  // max |ratio_lambda / ratio_1 - 1|
  double max_residual = 0.0;   // max relative l2 gap between u_lambda and the rescaled u_1
};

/// Runs f_lambda = b(lambda x) on the grid scaled by 1/lambda over the window
/// T_lambda = T / lambda^{2/(m+2)} and compares against the lambda = 1 run.
ScalingReport scaling_check(const ScalingSetup& setup, const std::vector<double>& lambdas);

/// Forcing F(t, x) = chi(t) b(lambda |x|), chi = sin^2(pi t / tau) on [0, tau].
struct ForcingMember {
  std::string label;
  Profile profile = Profile::CosineBump;
  double lambda = 1.0;
  double tau = 1.0;
  double amplitude = 1.0;
};

struct InhomogeneousSetup {
  int m = 1;
  double q = 0.0;  // 0 selects q0
  double M = 1.0;
  double dr = 0.02;
  double cfl = 0.9;
  double phi_max = 64.0;
  double cauchy_tol = 0.02;
  std::vector<ForcingMember> family;
};

struct InhomogeneousReport {
  EstimateReport estimate;       // ||w||_{L^q} / || |D|^{gamma - 1/(m+2)} F ||_{L^{p0}}
  std::vector<double> combined;  // (||w||_{L^q} + || |D|^{gamma-1/(m+2)} w ||_{L^{q0}}) / same
};

/// Zero data, n = 3. Requires q0 <= q < inf.
InhomogeneousReport inhomogeneous_ratio(const InhomogeneousSetup& setup);

}  // namespace tricomi
