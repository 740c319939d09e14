#pragma once

#include <stdexcept>
#include <string>

namespace evci {

class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class range_violation : public std::out_of_range {
 public:
  range_violation(double x, double a, double b)
      : std::out_of_range("value " + std::to_string(x) + " outside declared support [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]") {}
};

class frozen_engine_error : public std::logic_error {
 public:
  frozen_engine_error()
      : std::logic_error("engine is frozen: a terminal decision was already reached") {}
};

/// Closed support interval [a, b] of a bounded random variable. All
/// observations and all evaluation points must lie inside it.
struct SupportBounds {
  double a = 0.0;
  double b = 1.0;

  double range() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x >= a && x <= b; }

  static SupportBounds checked(double a, double b) {
    if (!(a < b)) throw parameter_error("support bounds require a < b");
    return SupportBounds{a, b};
  }
};

}  // namespace evci
