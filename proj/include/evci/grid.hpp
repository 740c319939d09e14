#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "evci/support.hpp"

namespace evci {

/// Interval endpoints read off a LogEGrid. Node log-sums are exact; the
/// endpoints interpolate linearly inside the bracketing cell, so they carry
/// an O(cell²·curvature) error — far below any decision scale, but looser
/// than the bisection solver's tolerance.
struct GridInterval {
  double lo = 0.0;
  double hi = 1.0;
  bool clamped_lo = false;
  bool clamped_hi = false;
  double mu_hat = 0.5;  // argmin node, cell resolution

  double length() const { return hi - lo; }
};

/// Fixed z-grid over [a, b] with incrementally maintained log betting sums:
/// add_observation costs O(nodes) and keeps, per node z_i,
///   log_plus[i]  = Σ_t log(1 + w_t(x_t − z_i)),
///   log_minus[i] = Σ_t log(1 − w_t(x_t − z_i)),
/// exactly (same accumulation as a from-scratch recomputation). This is the
/// streaming-path evaluator for long sequential runs where re-solving the
/// interval from the full history after every observation would be O(n) each.
class LogEGrid {
 public:
  LogEGrid(SupportBounds bounds, int cells = 1024)
      : bounds_(bounds),
        cells_(cells),
        step_(bounds.range() / cells),
        log_plus_(static_cast<std::size_t>(cells) + 1, 0.0),
        log_minus_(static_cast<std::size_t>(cells) + 1, 0.0),
        z_(static_cast<std::size_t>(cells) + 1, 0.0) {
    if (cells < 2) throw parameter_error("grid needs at least 2 cells");
    for (int i = 0; i <= cells_; ++i) z_[static_cast<std::size_t>(i)] = bounds_.a + step_ * i;
    z_.back() = bounds_.b;
  }

  SupportBounds bounds() const { return bounds_; }
  int nodes() const { return cells_ + 1; }
  double z_at(int i) const { return z_[static_cast<std::size_t>(i)]; }

  void add_observation(double x, double w) {
    if (!bounds_.contains(x)) throw range_violation(x, bounds_.a, bounds_.b);
    const std::size_t n = z_.size();
    // Factors computed from the stored node coordinates so the accumulated
    // sums match a from-scratch recomputation bit for bit.
    for (std::size_t i = 0; i < n; ++i) {
      const double d = w * (x - z_[i]);
      log_plus_[i] += std::log1p(d);
      log_minus_[i] += std::log1p(-d);
    }
    ++count_;
  }

  std::int64_t count() const { return count_; }
  double log_plus_at(int i) const { return log_plus_[static_cast<std::size_t>(i)]; }
  double log_minus_at(int i) const { return log_minus_[static_cast<std::size_t>(i)]; }
  double log_e_at(int i) const {
    return std::max(log_plus_[static_cast<std::size_t>(i)],
                    log_minus_[static_cast<std::size_t>(i)]) -
           kLog2;
  }

  /// Level set { z : log E(z) ≤ log_level } read off the grid. log E is
  /// convex with min ≤ −log 2, so the set is a non-empty interval.
  GridInterval level_set(double log_level) const {
    const int n = nodes();
    GridInterval out;

    int i_min = 0;
    double best = log_e_at(0);
    for (int i = 1; i < n; ++i) {
      const double v = log_e_at(i);
      if (v < best) {
        best = v;
        i_min = i;
      }
    }
    out.mu_hat = z_at(i_min);

    if (best > log_level) {
      // Below grid resolution; collapse to the argmin node.
      out.lo = out.hi = out.mu_hat;
      return out;
    }

    // Left crossing: last node before i_min with log E > level.
    if (log_e_at(0) <= log_level) {
      out.lo = bounds_.a;
      out.clamped_lo = true;
    } else {
      int i = i_min;
      while (i > 0 && log_e_at(i - 1) <= log_level) --i;
      out.lo = interpolate(i - 1, i, log_level);
    }

    // Right crossing, symmetric.
    if (log_e_at(n - 1) <= log_level) {
      out.hi = bounds_.b;
      out.clamped_hi = true;
    } else {
      int i = i_min;
      while (i < n - 1 && log_e_at(i + 1) <= log_level) ++i;
      out.hi = interpolate(i, i + 1, log_level);
    }
    return out;
  }

 private:
  static constexpr double kLog2 = 0.6931471805599453;

  double interpolate(int i, int j, double level) const {
    const double fi = log_e_at(i);
    const double fj = log_e_at(j);
    if (fi == fj) return z_at(i);
    const double t = (level - fi) / (fj - fi);
    return z_at(i) + std::clamp(t, 0.0, 1.0) * step_;
  }

  SupportBounds bounds_;
  int cells_;
  double step_;
  std::vector<double> log_plus_;
  std::vector<double> log_minus_;
  std::vector<double> z_;
  std::int64_t count_ = 0;
};

}  // namespace evci
