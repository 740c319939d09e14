#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "evci/support.hpp"
#include "evci/weights.hpp"

namespace evci {

/// Log of the two one-sided betting products and of their combination
///   E_n(z) = ½ max( Π(1 + w_t(x_t − z)), Π(1 − w_t(x_t − z)) ).
struct LogEValue {
  double log_plus = 0.0;   // Σ log(1 + w_t(x_t − z))
  double log_minus = 0.0;  // Σ log(1 − w_t(x_t − z))
  double log_e = 0.0;      // max(log_plus, log_minus) − log 2

  double e_value() const { return std::exp(log_e); }
};

/// Per-stream e-process state. Stores the full (x_t, w_t) history (E_n(z) has
/// no bounded sufficient statistic in z; evaluation is O(n), fine at desk
/// scale), the running mean/variance feeding the predictable weights, and the
/// running derivative-envelope sums used by the error-bound calculators.
///
/// Weights are predictable by construction: observe() computes w_{n+1} from
/// the pre-observation statistics before ingesting x.
class EProcessState {
 public:
  explicit EProcessState(WeightSchedule schedule)
      : schedule_(schedule), bounds_(schedule.bounds) {
    const double half = 0.5 * bounds_.range();
    var_.sigma0_sq = half * half;
  }

  SupportBounds bounds() const { return bounds_; }
  const WeightSchedule& schedule() const { return schedule_; }
  std::int64_t count() const { return static_cast<std::int64_t>(xs_.size()); }
  double running_mean() const { return var_.mean; }
  double running_sigma_sq() const { return count() > 0 ? var_.sigma_sq() : 0.0; }

  const std::vector<double>& observations() const { return xs_; }
  const std::vector<double>& weights() const { return ws_; }

  /// Weight the next observation will be ingested with (depends only on the
  /// history seen so far).
  double next_weight() const { return schedule_.weight(count() + 1, var_.sigma_sq()); }

  /// Ingests one observation; returns the (predictable) weight it was paired
  /// with. Rejects values outside the declared support.
  double observe(double x) {
    if (!bounds_.contains(x)) throw range_violation(x, bounds_.a, bounds_.b);
    const double w = next_weight();
    xs_.push_back(x);
    ws_.push_back(w);
    var_.update(x);
    const double wr = w * bounds_.range();
    sum_w_over_one_plus_ += w / (1.0 + wr);
    sum_w_over_one_minus_ += w / (1.0 - wr);
    return w;
  }

  /// Exact log sums of the betting factors at z. Only contracted on the
  /// support hull: outside [a, b] factors may vanish or go negative.
  LogEValue log_eprocess_at(double z) const {
    if (!bounds_.contains(z)) {
      throw parameter_error("evaluation point outside the support hull [a, b]");
    }
    LogEValue v;
    const std::size_t n = xs_.size();
    for (std::size_t t = 0; t < n; ++t) {
      const double d = ws_[t] * (xs_[t] - z);
      v.log_plus += std::log1p(d);
      v.log_minus += std::log1p(-d);
    }
    v.log_e = std::max(v.log_plus, v.log_minus) - kLog2;
    return v;
  }

  /// Minimizer μ̂ of log E_n over [a, b]: the crossing point of the two log
  /// products (log_plus strictly decreasing in z, log_minus strictly
  /// increasing). Bracketed bisection to 1e−10·(b−a).
  double minimizer() const {
    if (count() < 1) throw parameter_error("minimizer requires at least one observation");
    const double tol = 1e-10 * bounds_.range();
    double lo = bounds_.a;
    double hi = bounds_.b;
    if (cross_gap(lo) <= 0.0) return lo;
    if (cross_gap(hi) >= 0.0) return hi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (cross_gap(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  /// Envelope of |d/dz log E_n(z)| away from the minimizer:
  /// lower = Σ w/(1 + w(b−a)), upper = Σ w/(1 − w(b−a)). Maintained
  /// incrementally.
  std::pair<double, double> log_derivative_bounds() const {
    if (count() < 1) {
      throw parameter_error("log_derivative_bounds requires at least one observation");
    }
    return {sum_w_over_one_plus_, sum_w_over_one_minus_};
  }

  double sum_weight_over_one_plus() const { return sum_w_over_one_plus_; }
  double sum_weight_over_one_minus() const { return sum_w_over_one_minus_; }

 private:
  static constexpr double kLog2 = 0.6931471805599453;

  // log_plus(z) − log_minus(z); strictly decreasing in z.
  double cross_gap(double z) const {
    double gap = 0.0;
    for (std::size_t t = 0; t < xs_.size(); ++t) {
      const double d = ws_[t] * (xs_[t] - z);
      gap += std::log1p(d) - std::log1p(-d);
    }
    return gap;
  }

  WeightSchedule schedule_;
  SupportBounds bounds_;
  std::vector<double> xs_;
  std::vector<double> ws_;
  RunningVariance var_;
  double sum_w_over_one_plus_ = 0.0;
  double sum_w_over_one_minus_ = 0.0;
};

}  // namespace evci
