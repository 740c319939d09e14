#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "evci/eprocess.hpp"
#include "evci/support.hpp"
#include "evci/weights.hpp"

namespace evci {

/// Level-set confidence interval C_n(α) = { z : E_n(z) ≤ 1/α }, clamped to
/// [a, b]. When a clamp flag is set the level set touched that side of the
/// support hull.
struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 1.0;
  double alpha = 0.05;
  std::int64_t n = 0;
  double mu_hat = 0.5;
  bool clamped_lo = false;
  bool clamped_hi = false;

  double length() const { return hi - lo; }
};

namespace detail {

// Root of log E(z) = level on [zrange_lo, zrange_hi] where log E is monotone
// and brackets the level. Plain bisection: log E is convex but kinked at μ̂,
// so this is the unconditionally safe choice.
inline double bisect_level(const EProcessState& state, double level, double lo, double hi,
                           double tol) {
  double f_lo = state.log_eprocess_at(lo).log_e - level;
  int iter = 0;
  while (hi - lo > tol && iter < 200) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = state.log_eprocess_at(mid).log_e - level;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    ++iter;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Warm-start hint: endpoints of a previously solved interval for the same
/// stream. Purely an optimization; the result is identical to a cold solve
/// within the root tolerance.
struct CiBracketHint {
  double lo = 0.0;
  double hi = 0.0;
};

inline ConfidenceInterval confidence_interval(const EProcessState& state, double alpha,
                                              const CiBracketHint* warm = nullptr) {
  check_level(alpha);
  const SupportBounds bounds = state.bounds();
  ConfidenceInterval ci;
  ci.alpha = alpha;
  ci.n = state.count();
  if (state.count() == 0) {
    // E ≡ ½ < 1/α: the level set is all of [a, b].
    ci.lo = bounds.a;
    ci.hi = bounds.b;
    ci.mu_hat = bounds.midpoint();
    ci.clamped_lo = ci.clamped_hi = true;
    return ci;
  }

  const double level = std::log(1.0 / alpha);
  const double tol = 1e-11 * bounds.range();
  const double mu = state.minimizer();
  ci.mu_hat = mu;

  // Left endpoint: log E is non-increasing on [a, μ̂].
  if (state.log_eprocess_at(bounds.a).log_e <= level) {
    ci.lo = bounds.a;
    ci.clamped_lo = true;
  } else {
    double lo = bounds.a;
    double hi = mu;
    if (warm != nullptr && warm->lo > lo && warm->lo < hi) {
      // Shrink the bracket around the previous endpoint when it still
      // straddles the level.
      const double pad = 64.0 * tol;
      double wl = std::max(lo, warm->lo - pad);
      double wh = std::min(hi, warm->lo + pad);
      for (int k = 0; k < 8 && wh > wl; ++k) {
        if (state.log_eprocess_at(wl).log_e > level &&
            state.log_eprocess_at(wh).log_e < level) {
          lo = wl;
          hi = wh;
          break;
        }
        const double width = wh - wl;
        wl = std::max(bounds.a, wl - width);
        wh = std::min(mu, wh + width);
      }
    }
    ci.lo = detail::bisect_level(state, level, lo, hi, tol);
  }

  // Right endpoint: log E is non-decreasing on [μ̂, b].
  if (state.log_eprocess_at(bounds.b).log_e <= level) {
    ci.hi = bounds.b;
    ci.clamped_hi = true;
  } else {
    double lo = mu;
    double hi = bounds.b;
    if (warm != nullptr && warm->hi > lo && warm->hi < hi) {
      const double pad = 64.0 * tol;
      double wl = std::max(lo, warm->hi - pad);
      double wh = std::min(hi, warm->hi + pad);
      for (int k = 0; k < 8 && wh > wl; ++k) {
        if (state.log_eprocess_at(wl).log_e < level &&
            state.log_eprocess_at(wh).log_e > level) {
          lo = wl;
          hi = wh;
          break;
        }
        const double width = wh - wl;
        wl = std::max(mu, wl - width);
        wh = std::min(bounds.b, wh + width);
      }
    }
    ci.hi = detail::bisect_level(state, level, lo, hi, tol);
  }

  ci.lo = std::min(ci.lo, ci.mu_hat);
  ci.hi = std::max(ci.hi, ci.mu_hat);
  return ci;
}

/// Closed-form bound on the interval length under constant weights w:
///   v = w²/(1 − w(b−a)),
///   L ≤ 2 (nw − sqrt(n²w² − 2nv(nv σ̂²/2 + log(2/α)))) / (nv),
/// valid when nw² ≥ 2v(nv σ̂²/2 + log(2/α)) (feasible flag).
struct LengthBound {
  double w = 0.0;
  double v = 0.0;
  std::int64_t n = 0;
  double sigma_sq = 0.0;
  double alpha = 0.05;
  bool feasible = false;
  double bound = 0.0;  // meaningful only when feasible
};

inline LengthBound length_bound_constant_weights(double w, std::int64_t n, double sigma_sq,
                                                 double alpha, SupportBounds bounds) {
  check_level(alpha);
  if (n < 1) throw parameter_error("n must be >= 1");
  const double wr = w * bounds.range();
  if (!(w > 0.0 && wr < 1.0)) {
    throw parameter_error("constant weight must satisfy 0 < w(b-a) < 1");
  }
  if (sigma_sq < 0.0) throw parameter_error("variance must be non-negative");

  LengthBound lb;
  lb.w = w;
  lb.v = w * w / (1.0 - wr);
  lb.n = n;
  lb.sigma_sq = sigma_sq;
  lb.alpha = alpha;

  const double nd = static_cast<double>(n);
  const double nv = nd * lb.v;
  const double inner = 0.5 * nv * sigma_sq + std::log(2.0 / alpha);
  const double discriminant = nd * nd * w * w - 2.0 * nv * inner;
  lb.feasible = nd * w * w >= 2.0 * lb.v * inner;
  if (lb.feasible) {
    lb.bound = 2.0 * (nd * w - std::sqrt(std::max(0.0, discriminant))) / nv;
  }
  return lb;
}

/// L_H: the length bound evaluated at the fixed-Hoeffding weight with the
/// empirical variance replaced by its maximum ((b−a)/2)². Infeasible for
/// small n, in which case the fixed-time type II bound has no guarantee.
inline LengthBound lh_bound(std::int64_t n, double alpha, double c, SupportBounds bounds) {
  const double w = fixed_hoeffding_weight(n, alpha, c, bounds);
  const double half = 0.5 * bounds.range();
  return length_bound_constant_weights(w, n, half * half, alpha, bounds);
}

}  // namespace evci
