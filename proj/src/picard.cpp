#include "tricomi/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tricomi/kernels.hpp"
#include "tricomi/norms.hpp"

namespace tricomi {

namespace k = kernels::omp;

namespace {

struct Sweep {
  std::vector<double> times;
  std::vector<std::vector<double>> u;  // every time node
};

class Iterator {
 public:
  explicit Iterator(const PicardSetup& setup)
      : setup_(setup),
        grid_(RadialGrid::for_run(3, setup.config.params.m, setup.config.params.M,
                                  setup.config.t_max, setup.dr)) {
    const auto& pm = setup.config.params;
    const auto ex = exponent_table(pm.m, 3);
    q0_ = ex.q0;
    r_ = global_indices(pm.m, 3, pm.p).r;
    beta_ = gamma_index(pm.m, 3, r_) - 1.0 / (pm.m + 2.0);
    std::tie(u0_, u1_) = make_bump(grid_, pm.M, pm.amplitude, setup.profile);
    linear_ = setup.config;
    linear_.sigma = 0;
    linear_.output_dt = linear_.t_max;
  }

  double q0() const { return q0_; }
  double r() const { return r_; }
  double beta() const { return beta_; }

  /// Solves with forcing sigma P(prev); returns every node and M of the result.
  Sweep run(const Sweep* prev, double& M_out) {
    Sweep out;
    const double sigma = setup_.config.sigma;
    const double p = setup_.config.params.p;
    const auto kind = setup_.config.power;
    const auto& pm = setup_.config.params;
    std::vector<SpacetimeAccumulator> accs;
    std::vector<double> orders;
    if (setup_.sampled_sup_norm) {
      const double mm = pm.m + 2.0;
      for (double q : {q0_, 0.5 * (q0_ + r_), r_}) {
        accs.emplace_back(grid_, q);
        orders.push_back((mm * 3 + 2.0) / (q * mm) - 4.0 / (mm * (p - 1.0)));
      }
    } else {
      accs.emplace_back(grid_, r_);
      orders.push_back(0.0);
      accs.emplace_back(grid_, q0_);
      orders.push_back(beta_);
    }

    SolveOptions opts;
    opts.record = false;
    if (prev != nullptr && sigma != 0.0) {
      opts.source = [&, prev](std::size_t step, double, std::span<double> F) {
        if (step >= prev->u.size()) throw std::logic_error("picard: time schedules differ");
        k::power_source_u(prev->u[step], sigma, p, kind, F);
      };
    }
    opts.observer = [&](const StepView& sv) {
      out.times.push_back(sv.t);
      out.u.emplace_back(sv.u.begin(), sv.u.end());
      for (std::size_t i = 0; i < accs.size(); ++i) {
        if (orders[i] == 0.0) {
          accs[i].add(sv.t, sv.u);
        } else {
          accs[i].add(sv.t, fractional_derivative(grid_, sv.u, orders[i]));
        }
      }
      return true;
    };
    solve(linear_, grid_, u0_, u1_, opts);
    if (setup_.sampled_sup_norm) {
      M_out = 0.0;
      for (const auto& a : accs) M_out = std::max(M_out, a.norm());
    } else {
      M_out = accs[0].norm() + accs[1].norm();
    }
    return out;
  }

  /// ||a - b||_{L^{q0}} over the stored nodes; b may be null (zero).
  double difference(const Sweep& a, const Sweep* b) const {
    SpacetimeAccumulator acc(grid_, q0_);
    std::vector<double> d(grid_.nodes());
    for (std::size_t i = 0; i < a.times.size(); ++i) {
      if (b == nullptr) {
        acc.add(a.times[i], a.u[i]);
        continue;
      }
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = a.u[i][j] - b->u[i][j];
      acc.add(a.times[i], d);
    }
    return acc.norm();
  }

 private:
  const PicardSetup& setup_;
  RadialGrid grid_;
  double q0_, r_, beta_;
  std::vector<double> u0_, u1_;
  SolverConfig linear_;
};

IterationReport iterate_impl(const PicardSetup& setup, int k_max) {
  setup.config.validate();
  if (setup.config.params.n != 3) throw std::domain_error("picard: only n = 3 is supported");
  if (k_max < 0) throw std::domain_error("picard: k_max must be >= 0");
  Iterator it(setup);
  IterationReport rep;
  rep.q0 = it.q0();
  rep.r = it.r();
  rep.beta = it.beta();

  double M0 = 0.0;
  Sweep prev = it.run(nullptr, M0);
  rep.M.push_back(M0);
  rep.N.push_back(it.difference(prev, nullptr));
  rep.ratios.push_back(0.0);
  for (int kk = 1; kk <= k_max; ++kk) {
    double Mk = 0.0;
    Sweep next = it.run(&prev, Mk);
    const double Nk = it.difference(next, &prev);
    rep.M.push_back(Mk);
    rep.N.push_back(Nk);
    rep.ratios.push_back(rep.N[kk - 1] > 0.0 ? Nk / rep.N[kk - 1] : 0.0);
    rep.k_stop = kk;
    prev = std::move(next);
    if (!std::isfinite(Mk) || Mk > setup.divergence_factor * M0) {
      rep.diverged = true;
      break;
    }
    if (Nk <= setup.stop_rel * M0) {
      rep.converged = true;
      break;
    }
  }
  if (rep.converged) {
    double unused = 0.0;
    const Sweep again = it.run(&prev, unused);
    const double size = it.difference(prev, nullptr);
    rep.fixed_point_residual = size > 0.0 ? it.difference(again, &prev) / size : 0.0;
  } else {
    rep.fixed_point_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace

IterationReport iterate(const PicardSetup& setup) { return iterate_impl(setup, setup.k_max); }

double epsilon_threshold(const PicardSetup& setup, double target_ratio) {
  if (!(target_ratio > 0.0)) throw std::domain_error("epsilon_threshold: target must be positive");
  auto accepts = [&](double eps) {
    PicardSetup s = setup;
    s.config.params.amplitude = eps;
    s.stop_rel = 0.0;
    const auto rep = iterate_impl(s, 4);
    if (rep.diverged) return false;
    const double floor = 1e-13 * rep.M[0];
    for (int kk = 2; kk <= 4 && kk < static_cast<int>(rep.N.size()); ++kk) {
      if (rep.N[kk - 1] <= floor || rep.N[kk] <= floor) continue;
      if (!(rep.ratios[kk] < target_ratio)) return false;
    }
    return true;
  };

  double eps = setup.config.params.amplitude > 0.0 ? setup.config.params.amplitude : 1e-3;
  double good = 0.0, bad = 0.0;
  if (accepts(eps)) {
    good = eps;
    for (int i = 0; i < 40 && bad == 0.0; ++i) {
      eps *= 2.0;
      (accepts(eps) ? good : bad) = eps;
    }
    if (bad == 0.0) return good;
  } else {
    bad = eps;
    for (int i = 0; i < 40 && good == 0.0; ++i) {
      eps *= 0.5;
      (accepts(eps) ? good : bad) = eps;
    }
    if (good == 0.0) return 0.0;
  }
  for (int i = 0; i < 20; ++i) {
    const double mid = std::sqrt(good * bad);
    (accepts(mid) ? good : bad) = mid;
  }
  return good;
}

std::vector<IndexSet> integer_power_index_sets(int m, int n, int p) {
  using exact::Rational;
  if (p < 2) throw std::domain_error("integer_power_index_sets: p must be an integer >= 2");
  if (m < 0 || n < 1) throw std::domain_error("integer_power_index_sets: need m >= 0, n >= 1");
  const Rational mm(m + 2);
  const Rational NN = mm * n + 2;
  const Rational shift = Rational(4) / (mm * (p - 1));
  const Rational A = Rational(n, 2) - Rational(1) / mm - shift;
  if (A < 0) throw std::domain_error("integer_power_index_sets: total order is negative");
  const Rational inv_p0 = Rational(1) / exact::p0(m, n);
  const Rational inv_q0 = Rational(1) / exact::q0(m, n);
  const Rational r = NN * (p - 1) / 4;

  std::vector<std::vector<Rational>> splits;
  splits.emplace_back(static_cast<std::size_t>(p), A / p);
  {
    std::vector<Rational> one(static_cast<std::size_t>(p), Rational(0));
    one[0] = A;
    splits.push_back(one);
  }
  {
    std::vector<Rational> two(static_cast<std::size_t>(p), Rational(0));
    two[0] = A / 2;
    two[1] = A / 2;
    splits.push_back(two);
  }

  std::vector<IndexSet> out;
  for (auto& alpha : splits) {
    IndexSet set;
    set.sum_q_inv = 0;
    set.within_range = true;
    for (const auto& a : alpha) {
      const Rational qi = mm / NN * (a + shift);
      set.q_inv.push_back(qi);
      set.sum_q_inv += qi;
      // q0 <= q_j <= r  <=>  1/r <= 1/q_j <= 1/q0
      if (qi > inv_q0 || qi < Rational(1) / r) set.within_range = false;
    }
    set.alpha = std::move(alpha);
    set.sums_to_inverse_p0 = set.sum_q_inv == inv_p0;
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace tricomi
