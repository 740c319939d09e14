#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evci/eprocess.hpp"
#include "evci/grid.hpp"
#include "evci/interval.hpp"
#include "evci/support.hpp"
#include "evci/weights.hpp"

namespace evci {

enum class Arm { P, Q };

inline const char* to_string(Arm arm) { return arm == Arm::P ? "P" : "Q"; }

/// Configuration of one pairwise overlap test (fixed-time or sequential).
struct TestConfig {
  enum class Mode { Fixed, Anytime };

  Mode mode = Mode::Anytime;
  double alpha = 0.1;
  double delta = 0.1;  // effect size Δ, H0-acceptance rule (anytime mode)
  double c = 1.0;
  std::int64_t t0 = 1;  // burn-in per arm (anytime mode)
  SupportBounds bounds_p{};
  SupportBounds bounds_q{};
  std::int64_t n = 0;  // fixed-mode horizons
  std::int64_t m = 0;
  ScheduleKind fixed_schedule = ScheduleKind::FixedHoeffding;
  int grid_cells = 1024;           // streaming evaluator resolution
  std::int64_t decision_stride = 1;  // check decisions every k-th eligible observation

  void validate() const {
    check_level(alpha);
    check_tuning_constant(c);
    if (mode == Mode::Anytime) {
      if (t0 < 1) throw parameter_error("anytime mode requires burn-in t0 >= 1");
      if (!(delta > 0.0)) throw parameter_error("effect size delta must be positive");
    }
    if (decision_stride < 1) throw parameter_error("decision stride must be >= 1");
  }
};

struct Decision {
  enum class Kind { Continue, H1Minus, H0, H1Plus };

  Kind kind = Kind::Continue;
  std::int64_t n_p = 0;
  std::int64_t n_q = 0;
  ConfidenceInterval ci_p{};
  ConfidenceInterval ci_q{};

  bool terminal() const { return kind != Kind::Continue; }
};

inline const char* to_string(Decision::Kind kind) {
  switch (kind) {
    case Decision::Kind::Continue: return "continue";
    case Decision::Kind::H1Minus: return "H1-";
    case Decision::Kind::H0: return "H0";
    case Decision::Kind::H1Plus: return "H1+";
  }
  return "?";
}

/// L(I ∪ J) for two intervals: max(hi) − min(lo).
inline double union_length(const ConfidenceInterval& x, const ConfidenceInterval& y) {
  return std::max(x.hi, y.hi) - std::min(x.lo, y.lo);
}

/// Sequential overlap test. Ingests observations one at a time (weights stay
/// predictable), and once both arms have t0 observations evaluates, in order:
///   H1+  if C(X) lies strictly above C(Y),
///   H1−  if C(X) lies strictly below C(Y),
///   H0   if the intervals intersect and the length of their union is ≤ Δ,
///   otherwise continue.
/// A terminal decision freezes the engine: every observation must be part of
/// the test, so later ingests are an error.
///
/// The per-step interval endpoints come from the incremental grid; terminal
/// decisions re-solve both intervals with the exact bisection path before
/// being recorded.
class OverlapEngine {
 public:
  explicit OverlapEngine(TestConfig cfg)
      : cfg_(cfg),
        x_(make_state(cfg, Arm::P)),
        y_(make_state(cfg, Arm::Q)),
        gx_(cfg.bounds_p, cfg.grid_cells),
        gy_(cfg.bounds_q, cfg.grid_cells),
        log_level_(std::log(1.0 / cfg.alpha)) {
    cfg_.validate();
    if (cfg_.mode != TestConfig::Mode::Anytime) {
      throw parameter_error("OverlapEngine runs the anytime test; use fixed_time_decision");
    }
  }

  const TestConfig& config() const { return cfg_; }
  bool terminal() const { return terminal_.has_value(); }
  const std::optional<Decision>& decision() const { return terminal_; }
  std::int64_t count(Arm arm) const { return state(arm).count(); }
  const EProcessState& state(Arm arm) const { return arm == Arm::P ? x_ : y_; }

  /// Current streaming endpoints for one arm.
  GridInterval grid_interval(Arm arm) const {
    return (arm == Arm::P ? gx_ : gy_).level_set(log_level_);
  }

  /// Exact (bisection) interval for one arm; used for reports.
  ConfidenceInterval interval(Arm arm) const {
    return confidence_interval(state(arm), cfg_.alpha);
  }

  /// Ingest one observation without evaluating (batch collection).
  void ingest(Arm arm, double value) {
    if (terminal_) throw frozen_engine_error();
    EProcessState& st = arm == Arm::P ? x_ : y_;
    LogEGrid& grid = arm == Arm::P ? gx_ : gy_;
    const double w = st.observe(value);
    grid.add_observation(value, w);
    ++ingests_since_check_;
  }

  /// Decision check against the current state (burn-in gated, stride applied
  /// to ingests). Stores and returns the decision when terminal.
  Decision evaluate() {
    if (terminal_) return *terminal_;
    Decision d;
    d.kind = Decision::Kind::Continue;
    d.n_p = x_.count();
    d.n_q = y_.count();
    if (x_.count() < cfg_.t0 || y_.count() < cfg_.t0) return d;
    if (ingests_since_check_ < cfg_.decision_stride) return d;
    ingests_since_check_ = 0;

    const GridInterval ix = gx_.level_set(log_level_);
    const GridInterval iy = gy_.level_set(log_level_);
    if (ix.lo > iy.hi) {
      d.kind = Decision::Kind::H1Plus;
    } else if (ix.hi < iy.lo) {
      d.kind = Decision::Kind::H1Minus;
    } else if (std::max(ix.hi, iy.hi) - std::min(ix.lo, iy.lo) <= cfg_.delta) {
      d.kind = Decision::Kind::H0;
    }
    if (d.kind != Decision::Kind::Continue) {
      d.ci_p = interval(Arm::P);
      d.ci_q = interval(Arm::Q);
      terminal_ = d;
    }
    return d;
  }

  /// One observation + decision check (Algorithm step).
  Decision step(Arm arm, double value) {
    ingest(arm, value);
    return evaluate();
  }

 private:
  static EProcessState make_state(const TestConfig& cfg, Arm arm) {
    cfg.validate();
    const SupportBounds b = arm == Arm::P ? cfg.bounds_p : cfg.bounds_q;
    return EProcessState(WeightSchedule::anytime(cfg.alpha, cfg.c, cfg.t0, b));
  }

  TestConfig cfg_;
  EProcessState x_;
  EProcessState y_;
  LogEGrid gx_;
  LogEGrid gy_;
  double log_level_;
  std::optional<Decision> terminal_;
  std::int64_t ingests_since_check_ = 0;
};

/// Fixed-time overlap test: solve both intervals on the full samples and
/// compare. H0 whenever the intervals intersect (no Δ rule at fixed time).
/// Each stream's weight uses its own horizon.
inline Decision fixed_time_decision(std::span<const double> xs, std::span<const double> ys,
                                    const TestConfig& cfg) {
  cfg.validate();
  if (xs.empty() || ys.empty()) {
    throw parameter_error("fixed-time test requires non-empty samples on both arms");
  }

  const auto schedule = [&](SupportBounds bounds, std::int64_t horizon) {
    if (cfg.fixed_schedule == ScheduleKind::FixedBernstein) {
      return WeightSchedule::fixed_bernstein(horizon, cfg.alpha, cfg.c, bounds);
    }
    return WeightSchedule::fixed_hoeffding(horizon, cfg.alpha, cfg.c, bounds);
  };

  EProcessState sx(schedule(cfg.bounds_p, static_cast<std::int64_t>(xs.size())));
  EProcessState sy(schedule(cfg.bounds_q, static_cast<std::int64_t>(ys.size())));
  for (double x : xs) sx.observe(x);
  for (double y : ys) sy.observe(y);

  Decision d;
  d.n_p = sx.count();
  d.n_q = sy.count();
  d.ci_p = confidence_interval(sx, cfg.alpha);
  d.ci_q = confidence_interval(sy, cfg.alpha);
  if (d.ci_p.lo > d.ci_q.hi) {
    d.kind = Decision::Kind::H1Plus;
  } else if (d.ci_p.hi < d.ci_q.lo) {
    d.kind = Decision::Kind::H1Minus;
  } else {
    d.kind = Decision::Kind::H0;
  }
  return d;
}

}  // namespace evci
