#pragma once

#include <cstddef>
#include <span>

namespace tricomi {

/// Discrete sine transform on the interior nodes j = 1..J-1 of a uniform grid
/// on [0, R] with Dirichlet ends:
///   forward:  b_l = (2/J) sum_j w_j sin(pi l j / J),   l = 1..J-1
///   inverse:  w_j = sum_l b_l sin(pi l j / J)
/// so that w(r) = sum_l b_l sin(k_l r) with k_l = l pi / R interpolates the
/// nodes. Backed by FFTW (RODFT00); plans are cached per size and executed
/// re-entrantly.
class SineTransform {
 public:
  explicit SineTransform(std::size_t cells);

  std::size_t cells() const { return cells_; }
  std::size_t size() const { return cells_ - 1; }

  void forward(std::span<const double> interior, std::span<double> coeffs) const;
  void inverse(std::span<const double> coeffs, std::span<double> interior) const;

 private:
  std::size_t cells_;
  void* plan_;
};

/// O(J^2) reference for SineTransform::forward.
void sine_transform_reference(std::span<const double> interior, std::span<double> coeffs);

}  // namespace tricomi
