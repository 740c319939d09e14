#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "evci/support.hpp"

namespace evci {

/// One-pass mean/variance tracker. sigma_sq() is the biased empirical
/// variance (1/t)Σ(x_i − x̄)²; before any data it falls back to sigma0_sq,
/// the worst case ((b−a)/2)² for a variable bounded on [a, b].
struct RunningVariance {
  std::int64_t count = 0;
  double mean = 0.0;
  double ssq = 0.0;  // sum of squared deviations
  double sigma0_sq = 0.25;

  double sigma_sq() const {
    return count > 0 ? ssq / static_cast<double>(count) : sigma0_sq;
  }

  void update(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    ssq += delta * (x - mean);
  }
};

inline void check_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha must lie in (0, 1)");
}

// c in (0, 1) is accepted but outside the recommended range; callers that
// produce reports surface a warning instead of rejecting.
inline void check_tuning_constant(double c) {
  if (!(c > 0.0)) throw parameter_error("tuning constant c must be positive");
}
inline bool tuning_constant_recommended(double c) { return c >= 1.0; }

/// Constant fixed-horizon weight: (1/(b−a)) / (1 + sqrt(n / (8 c² log(2/α)))).
/// Bounds the variance term by its worst case, so no plug-in estimate is
/// needed and the weight is deterministic.
inline double fixed_hoeffding_weight(std::int64_t n, double alpha, double c,
                                     SupportBounds bounds) {
  if (n < 1) throw parameter_error("horizon n must be >= 1");
  check_level(alpha);
  check_tuning_constant(c);
  const double log_term = std::log(2.0 / alpha);
  const double root = std::sqrt(static_cast<double>(n) / (8.0 * c * c * log_term));
  return 1.0 / (bounds.range() * (1.0 + root));
}

/// Variance-adaptive fixed-horizon weight:
/// 1 / ((b−a) + sqrt(n σ̂²_{t−1} / (2 log(2/α)))).
/// Returns 1/(b−a) when the running variance is zero; engine callers must
/// cap it strictly below 1/(b−a) (WeightSchedule does).
inline double fixed_bernstein_weight(std::int64_t n, double alpha, double sigma_sq_prev,
                                     SupportBounds bounds) {
  if (n < 1) throw parameter_error("horizon n must be >= 1");
  check_level(alpha);
  if (sigma_sq_prev < 0.0) throw parameter_error("variance must be non-negative");
  const double log_term = std::log(2.0 / alpha);
  const double root = std::sqrt(static_cast<double>(n) * sigma_sq_prev / (2.0 * log_term));
  return 1.0 / (bounds.range() + root);
}

/// Anytime weight. Deterministic burn-in for t <= t0, then the empirical
/// Bernstein-style term capped at the deterministic value frozen at t0 (the
/// cap keeps the sequence non-increasing and bounded away from 1/(b−a)).
inline double anytime_weight(std::int64_t t, std::int64_t t0, double alpha, double c,
                             double sigma_sq_prev, SupportBounds bounds) {
  if (t < 1) throw parameter_error("time index t must be >= 1");
  if (t0 < 1) throw parameter_error("burn-in t0 must be >= 1");
  check_level(alpha);
  check_tuning_constant(c);
  const double log_term = std::log(2.0 / alpha);
  const double log_t1 = std::log(static_cast<double>(t) + 1.0);
  if (t <= t0) {
    const double root = std::sqrt(static_cast<double>(t) * log_t1 / (8.0 * c * c * log_term));
    return 1.0 / (bounds.range() * (1.0 + root));
  }
  if (sigma_sq_prev < 0.0) throw parameter_error("variance must be non-negative");
  const double bern_root =
      std::sqrt(static_cast<double>(t) * log_t1 * sigma_sq_prev / (2.0 * log_term));
  const double bern = 1.0 / (bounds.range() + bern_root);
  const double cap_root =
      std::sqrt(static_cast<double>(t0) * log_t1 / (8.0 * c * c * log_term));
  const double cap = 1.0 / (bounds.range() * (1.0 + cap_root));
  return std::min(bern, cap);
}

enum class ScheduleKind { FixedHoeffding, FixedBernstein, Anytime };

inline const char* to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::FixedHoeffding: return "fixed-hoeffding";
    case ScheduleKind::FixedBernstein: return "fixed-bernstein";
    case ScheduleKind::Anytime: return "anytime";
  }
  return "?";
}

/// Predictable betting-weight schedule. weight(t, σ̂²_{t−1}) emits the weight
/// for the t-th observation from statistics of the first t−1 only; every
/// emitted weight satisfies 0 < w(b−a) < 1.
struct WeightSchedule {
  ScheduleKind kind = ScheduleKind::Anytime;
  SupportBounds bounds{};
  double alpha = 0.05;
  double c = 1.0;
  std::int64_t horizon = 0;  // fixed-time kinds
  std::int64_t t0 = 1;       // anytime kind

  static WeightSchedule fixed_hoeffding(std::int64_t n, double alpha, double c,
                                        SupportBounds bounds) {
    fixed_hoeffding_weight(n, alpha, c, bounds);  // validate
    return WeightSchedule{ScheduleKind::FixedHoeffding, bounds, alpha, c, n, 1};
  }

  static WeightSchedule fixed_bernstein(std::int64_t n, double alpha, double c,
                                        SupportBounds bounds) {
    fixed_hoeffding_weight(n, alpha, c, bounds);  // validates the cap parameters too
    return WeightSchedule{ScheduleKind::FixedBernstein, bounds, alpha, c, n, 1};
  }

  static WeightSchedule anytime(double alpha, double c, std::int64_t t0,
                                SupportBounds bounds) {
    anytime_weight(1, t0, alpha, c, 0.0, bounds);  // validate
    return WeightSchedule{ScheduleKind::Anytime, bounds, alpha, c, 0, t0};
  }

  double weight(std::int64_t t, double sigma_sq_prev) const {
    switch (kind) {
      case ScheduleKind::FixedHoeffding:
        return fixed_hoeffding_weight(horizon, alpha, c, bounds);
      case ScheduleKind::FixedBernstein:
        // Capped at the Hoeffding weight for the same (n, alpha, c) so that
        // w(b−a) < 1 holds even when the running variance is zero.
        return std::min(fixed_bernstein_weight(horizon, alpha, sigma_sq_prev, bounds),
                        fixed_hoeffding_weight(horizon, alpha, c, bounds));
      case ScheduleKind::Anytime:
        return anytime_weight(t, t0, alpha, c, sigma_sq_prev, bounds);
    }
    throw parameter_error("unknown schedule kind");
  }

  /// Weights are deterministic (data-independent) for t <= t0 in the anytime
  /// schedule and for every t in the fixed-Hoeffding schedule.
  bool deterministic_at(std::int64_t t) const {
    switch (kind) {
      case ScheduleKind::FixedHoeffding: return true;
      case ScheduleKind::FixedBernstein: return false;
      case ScheduleKind::Anytime: return t <= t0;
    }
    return false;
  }
};

}  // namespace evci
