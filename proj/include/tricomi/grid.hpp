#pragma once

#include <cstddef>
#include <vector>

namespace tricomi {

/// Uniform radial grid r_j = j dr, j = 0..J, on [0, R] in R^n (odd n >= 3).
///
/// For n = 3 the solver works with w = r u and the quadrature weight is
/// |S^2| r_j^2 dr. For n >= 5 it uses a flux form of the radial Laplacian
/// whose control volumes are the shells between the half-nodes; the weights
/// are those shell volumes, so the discrete integral of Δu telescopes to the
/// outer boundary flux.
class RadialGrid {
 public:
  RadialGrid(int n_dim, double R, std::size_t J);

  /// Smallest grid with spacing `dr` satisfying R >= M + phi(t_max) + 10 dr.
  static RadialGrid for_run(int n_dim, int m, double M, double t_max, double dr);

  int n_dim() const { return n_; }
  double R() const { return R_; }
  std::size_t cells() const { return J_; }
  std::size_t nodes() const { return J_ + 1; }
  double dr() const { return dr_; }

  const std::vector<double>& r() const { return r_; }
  /// Quadrature weights for integrals over R^n of radial functions.
  const std::vector<double>& weights() const { return weights_; }

  /// Flux-form coefficients (n >= 5 path): Δu_j ≈ (fp_j (u_{j+1}-u_j) - fm_j (u_j-u_{j-1})) / dr^2.
  const std::vector<double>& flux_plus() const { return fp_; }
  const std::vector<double>& flux_minus() const { return fm_; }

  /// True when R >= M + phi(t) + 10 dr.
  bool covers(int m, double M, double t) const;

 private:
  int n_;
  double R_;
  std::size_t J_;
  double dr_;
  std::vector<double> r_, weights_, fp_, fm_;
};

}  // namespace tricomi
