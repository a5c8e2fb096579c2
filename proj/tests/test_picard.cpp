#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tricomi/exponents.hpp"
#include "tricomi/picard.hpp"

using namespace tricomi;
using exact::Rational;

namespace {

PicardSetup setup_for(double eps, double p = 3.0, int m = 1) {
  PicardSetup s;
  s.config.params = {m, 3, p, 1.0, eps};
  s.config.sigma = 1;
  s.config.t_max = 8.0;
  return s;
}

}  // namespace

TEST_CASE("zero data") {
  auto rep = iterate(setup_for(0.0));
  CHECK(rep.converged);
  REQUIRE(rep.N.size() >= 2);
  for (double M : rep.M) CHECK(M == 0.0);
  for (std::size_t k = 1; k < rep.N.size(); ++k) CHECK(rep.N[k] == 0.0);
}

TEST_CASE("contraction at small amplitude") {
  auto rep = iterate(setup_for(1e-3));
  CHECK(rep.converged);

  // Without the relative stop the iterates run until the difference is exactly zero.
  auto s = setup_for(1e-3);
  s.stop_rel = 0.0;
  rep = iterate(s);
  CHECK(rep.converged);
  REQUIRE(rep.ratios.size() >= 4);
  CHECK(rep.N.back() == 0.0);
  CHECK_FALSE(rep.diverged);
  CHECK(rep.q0 == doctest::Approx(22.0 / 7));
  CHECK(rep.r == doctest::Approx(global_indices(1, 3, 3.0).r));
  CHECK(rep.beta == doctest::Approx(gamma_index(1, 3, rep.r) - 1.0 / 3));
  for (std::size_t k = 2; k < rep.ratios.size(); ++k) CHECK(rep.ratios[k] <= 0.6);
  double M0 = rep.M[0];
  CHECK(*std::max_element(rep.M.begin(), rep.M.end()) <= 2.2 * M0);
  CHECK(rep.fixed_point_residual <= 1e-6);
  CHECK(rep.N.back() <= 1e-10 * M0);
}

TEST_CASE("contraction constant scales like eps^(p-1)") {
  for (double p : {3.0, 4.0}) {
    auto sa = setup_for(0.05, p), sb = setup_for(0.1, p);
    for (auto* s : {&sa, &sb}) {
      s->stop_rel = 0.0;
      s->k_max = 2;
    }
    auto a = iterate(sa);
    auto b = iterate(sb);
    REQUIRE(a.ratios.size() >= 3);
    REQUIRE(b.ratios.size() >= 3);
    double growth = b.ratios[2] / a.ratios[2];
    CAPTURE(p);
    CHECK(growth == doctest::Approx(std::pow(2.0, p - 1)).epsilon(0.1));
  }
}

TEST_CASE("differences decay geometrically") {
  auto rep = iterate(setup_for(0.5));
  REQUIRE(rep.converged);
  REQUIRE(rep.N.size() >= 5);
  for (std::size_t k = 1; k < rep.N.size(); ++k) {
    CHECK(rep.N[k] < rep.N[k - 1]);
    CHECK(rep.ratios[k] < 0.1);
  }
  // Least-squares slope of log N_k against k.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 1; k < rep.N.size(); ++k) {
    double x = static_cast<double>(k), y = std::log(rep.N[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope < -2.0);
  double M0 = rep.M[0];
  CHECK(*std::max_element(rep.M.begin(), rep.M.end()) <= 2.2 * M0);
}

TEST_CASE("signed power and sampled norm") {
  auto s = setup_for(1e-2);
  s.config.sigma = -1;
  s.config.power = kernels::Power::Signed;
  s.sampled_sup_norm = true;
  auto rep = iterate(s);
  CHECK(rep.converged);
  for (double M : rep.M) CHECK(std::isfinite(M));
  auto plain = iterate(setup_for(1e-2));
  // The sampled supremum includes the q = r term of the plain norm.
  CHECK(rep.M[0] >= 0.5 * plain.M[0]);
}

TEST_CASE("divergence is reported") {
  auto s = setup_for(20.0);
  s.k_max = 6;
  auto rep = iterate(s);
  CHECK(rep.diverged);
  CHECK_FALSE(rep.converged);
  CHECK(std::isnan(rep.fixed_point_residual));
}

TEST_CASE("small-data threshold") {
  auto s = setup_for(1e-3);
  double e9 = epsilon_threshold(s, 0.9);
  double e10 = epsilon_threshold(s, 1.0);
  CHECK(e9 > 0);
  CHECK(e10 >= e9);
  CHECK(epsilon_threshold(s, 0.9) == e9);
  CHECK_THROWS_AS(epsilon_threshold(s, 0.0), std::domain_error);
}

TEST_CASE("index bookkeeping for integer powers") {
  for (auto [m, n] : {std::pair{1, 3}, {0, 3}, {2, 3}, {1, 5}, {3, 3}}) {
    auto ex = exponent_table(m, n);
    int first = static_cast<int>(std::ceil(ex.small_data_upper));
    int N = (m + 2) * n;
    Rational inv_p0 = Rational(1) - Rational(N - 2, 2 * (N + 2));
    for (int p = std::max(first, 2); p <= first + 3; ++p) {
      Rational A = Rational(n, 2) - Rational(1, m + 2) - Rational(4, (m + 2) * (p - 1));
      auto sets = integer_power_index_sets(m, n, p);
      REQUIRE_FALSE(sets.empty());
      for (const auto& set : sets) {
        REQUIRE(set.alpha.size() == static_cast<std::size_t>(p));
        Rational total(0), sum(0);
        for (const auto& a : set.alpha) {
          CHECK(a >= Rational(0));
          total += a;
        }
        for (const auto& qi : set.q_inv) sum += qi;
        CHECK(total == A);
        CHECK(sum == set.sum_q_inv);
        CHECK(sum == inv_p0);
        CHECK(set.sums_to_inverse_p0);
      }
      CHECK(sets.front().within_range);
    }
  }
  CHECK_THROWS_AS(integer_power_index_sets(1, 3, 1), std::domain_error);
  CHECK_THROWS_AS(integer_power_index_sets(1, 3, 2), std::domain_error);
}
