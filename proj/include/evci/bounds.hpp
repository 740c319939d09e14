#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evci/engine.hpp"
#include "evci/interval.hpp"
#include "evci/support.hpp"
#include "evci/weights.hpp"

namespace evci {

/// Σ w/(1 + w(b−a)) and Σ w/(1 − w(b−a)) over a weight prefix. These two
/// sums envelope |d/dz log E| and drive every error bound below.
struct WeightSums {
  double plus_side = 0.0;   // Σ w/(1 + w(b−a))
  double minus_side = 0.0;  // Σ w/(1 − w(b−a))
};

inline WeightSums weight_sums(std::span<const double> weights, SupportBounds bounds) {
  WeightSums s;
  for (double w : weights) {
    const double wr = w * bounds.range();
    if (!(w > 0.0 && wr < 1.0)) {
      throw parameter_error("weights must satisfy 0 < w(b-a) < 1");
    }
    s.plus_side += w / (1.0 + wr);
    s.minus_side += w / (1.0 - wr);
  }
  return s;
}

/// C_{t0}: the larger of the two streams' minus/plus weight-sum ratios over
/// the deterministic burn-in prefix. Drives the type I bound.
inline double c_t0(std::span<const double> weights_x, std::span<const double> weights_y,
                   SupportBounds bounds_p, SupportBounds bounds_q) {
  if (weights_x.empty() || weights_y.empty()) {
    throw parameter_error("c_t0 needs at least one weight per stream");
  }
  const WeightSums sx = weight_sums(weights_x, bounds_p);
  const WeightSums sy = weight_sums(weights_y, bounds_q);
  return std::max(sx.minus_side / sx.plus_side, sy.minus_side / sy.plus_side);
}

inline double cap_probability(double p) { return std::min(p, 1.0); }

/// Per-side type I bound:
///   α (αC/4)^{1/(1+C)} + ¼ α² (4/(αC))^{C/(1+C)}.
/// Equals α^{3/2} at C = 1 and tends to α as C → ∞.
inline double type1_bound(double alpha, double c_t0_value) {
  check_level(alpha);
  if (!(c_t0_value >= 1.0)) throw parameter_error("C_t0 must be >= 1");
  const double first =
      alpha * std::pow(alpha * c_t0_value / 4.0, 1.0 / (1.0 + c_t0_value));
  const double second = 0.25 * alpha * alpha *
                        std::pow(4.0 / (alpha * c_t0_value),
                                 c_t0_value / (1.0 + c_t0_value));
  return cap_probability(first + second);
}

/// Anytime type II bound: 2α, independent of everything else.
inline double type2_anytime_bound(double alpha) {
  check_level(alpha);
  return cap_probability(2.0 * alpha);
}

/// Fixed-time type II bound. Only applicable when Δ exceeds L_H(P) + L_H(Q)
/// (and both L_H are computable); otherwise there is no guarantee and the
/// result is empty.
inline std::optional<double> type2_fixed_bound(double delta, std::int64_t n, std::int64_t m,
                                               double alpha, double c, SupportBounds bounds_p,
                                               SupportBounds bounds_q) {
  check_level(alpha);
  const LengthBound lh_p = lh_bound(n, alpha, c, bounds_p);
  const LengthBound lh_q = lh_bound(m, alpha, c, bounds_q);
  if (!lh_p.feasible || !lh_q.feasible) return std::nullopt;
  const double slack = delta - lh_p.bound - lh_q.bound;
  if (slack < 0.0) return std::nullopt;

  const double wp = fixed_hoeffding_weight(n, alpha, c, bounds_p);
  const double wq = fixed_hoeffding_weight(m, alpha, c, bounds_q);
  const double sum_p = static_cast<double>(n) * wp / (1.0 + wp * bounds_p.range());
  const double sum_q = static_cast<double>(m) * wq / (1.0 + wq * bounds_q.range());
  return cap_probability(alpha * (std::exp(-slack * sum_p) + std::exp(-slack * sum_q)));
}

/// Per-direction type III bound:
///   α² + α (e^{−Δ Σ_{t≤t0} w_Y/(1+w_Y(b_Q−a_Q))} + e^{−Δ Σ_{t≤t0} w_X/(1+w_X(b_P−a_P))}).
inline double type3_bound(double delta, std::span<const double> weights_x,
                          std::span<const double> weights_y, double alpha,
                          SupportBounds bounds_p, SupportBounds bounds_q) {
  check_level(alpha);
  if (delta < 0.0) throw parameter_error("delta must be non-negative");
  const WeightSums sx = weight_sums(weights_x, bounds_p);
  const WeightSums sy = weight_sums(weights_y, bounds_q);
  return cap_probability(alpha * alpha +
                         alpha * (std::exp(-delta * sy.plus_side) +
                                  std::exp(-delta * sx.plus_side)));
}

/// Probability that two same-mean confidence intervals are ever separated by
/// more than the required gap ℓ, parametrized by (η, η′):
///   P ≤ α^{η′+1} + ¼ α^{2−η},
/// valid whenever ℓ ≥ (log(1/α)/2)·max over streams of (η′/S⁺ − η/S⁻).
struct GapBoundResult {
  double eta = 0.0;
  double eta_prime = 0.0;
  double ell_requirement = 0.0;  // may be negative: ℓ = 0 is then admissible
  double probability_bound = 0.0;
};

inline GapBoundResult gap_probability_bound(double eta, double eta_prime, double alpha,
                                            const WeightSums& sums_x,
                                            const WeightSums& sums_y) {
  check_level(alpha);
  if (!(eta > 0.0) || !(eta_prime > 0.0)) {
    throw parameter_error("eta and eta' must be positive");
  }
  GapBoundResult r;
  r.eta = eta;
  r.eta_prime = eta_prime;
  const double gap_x = eta_prime / sums_x.plus_side - eta / sums_x.minus_side;
  const double gap_y = eta_prime / sums_y.plus_side - eta / sums_y.minus_side;
  r.ell_requirement = 0.5 * std::log(1.0 / alpha) * std::max(gap_x, gap_y);
  r.probability_bound =
      std::pow(alpha, eta_prime + 1.0) + 0.25 * std::pow(alpha, 2.0 - eta);
  return r;
}

/// Burn-in length heuristic: ceil(log(1/α) / kl(½, ½+Δ)) with the Bernoulli
/// KL divergence as a proxy for the difficulty of resolving a gap of Δ.
inline std::int64_t t0_heuristic(double alpha, double delta) {
  check_level(alpha);
  if (!(delta > 0.0 && delta < 0.5)) {
    throw parameter_error("t0 heuristic requires 0 < delta < 1/2");
  }
  const double p = 0.5;
  const double q = 0.5 + delta;
  const double kl = p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return static_cast<std::int64_t>(std::ceil(std::log(1.0 / alpha) / kl));
}

/// Bundle of the theoretical error bounds for one test configuration, as the
/// theorems state them (per side / per direction) plus the two-sided sums.
struct ErrorBounds {
  double alpha = 0.0;
  double c_t0 = 1.0;
  double type1_per_side = 0.0;
  double type1_two_sided = 0.0;
  double type2 = 1.0;
  bool type2_has_guarantee = false;
  double type3_per_direction = 0.0;
  double type3_two_sided = 0.0;
  std::optional<double> l_h_p;
  std::optional<double> l_h_q;
};

/// Deterministic weight prefix used by the bound theorems: the burn-in
/// anytime weights in anytime mode, the constant w^f over the full horizon in
/// fixed mode.
inline std::vector<double> deterministic_weight_prefix(const TestConfig& cfg, Arm arm) {
  const SupportBounds b = arm == Arm::P ? cfg.bounds_p : cfg.bounds_q;
  std::vector<double> ws;
  if (cfg.mode == TestConfig::Mode::Anytime) {
    ws.reserve(static_cast<std::size_t>(cfg.t0));
    for (std::int64_t t = 1; t <= cfg.t0; ++t) {
      ws.push_back(anytime_weight(t, cfg.t0, cfg.alpha, cfg.c, 0.0, b));
    }
  } else {
    const std::int64_t horizon = arm == Arm::P ? cfg.n : cfg.m;
    const double w = fixed_hoeffding_weight(horizon, cfg.alpha, cfg.c, b);
    ws.assign(static_cast<std::size_t>(horizon), w);
  }
  return ws;
}

inline ErrorBounds compute_error_bounds(const TestConfig& cfg) {
  cfg.validate();
  ErrorBounds eb;
  eb.alpha = cfg.alpha;

  const std::vector<double> wx = deterministic_weight_prefix(cfg, Arm::P);
  const std::vector<double> wy = deterministic_weight_prefix(cfg, Arm::Q);
  eb.c_t0 = c_t0(wx, wy, cfg.bounds_p, cfg.bounds_q);
  eb.type1_per_side = type1_bound(cfg.alpha, eb.c_t0);
  eb.type1_two_sided = cap_probability(2.0 * eb.type1_per_side);
  eb.type3_per_direction =
      type3_bound(cfg.delta, wx, wy, cfg.alpha, cfg.bounds_p, cfg.bounds_q);
  eb.type3_two_sided = cap_probability(2.0 * eb.type3_per_direction);

  if (cfg.mode == TestConfig::Mode::Anytime) {
    eb.type2 = type2_anytime_bound(cfg.alpha);
    eb.type2_has_guarantee = true;
  } else {
    const LengthBound lh_p = lh_bound(cfg.n, cfg.alpha, cfg.c, cfg.bounds_p);
    const LengthBound lh_q = lh_bound(cfg.m, cfg.alpha, cfg.c, cfg.bounds_q);
    if (lh_p.feasible) eb.l_h_p = lh_p.bound;
    if (lh_q.feasible) eb.l_h_q = lh_q.bound;
    // Bernstein weights leave the length uncontrolled without known
    // variances, so the fixed-time type II guarantee only covers the
    // Hoeffding schedule.
    std::optional<double> t2;
    if (cfg.fixed_schedule == ScheduleKind::FixedHoeffding) {
      t2 = type2_fixed_bound(cfg.delta, cfg.n, cfg.m, cfg.alpha, cfg.c, cfg.bounds_p,
                             cfg.bounds_q);
    }
    eb.type2_has_guarantee = t2.has_value();
    eb.type2 = t2.value_or(1.0);
  }
  return eb;
}

}  // namespace evci
