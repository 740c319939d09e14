#pragma once

#include <string>
#include <variant>

#include "evci/rng.hpp"
#include "evci/support.hpp"

namespace evci {

struct Bernoulli {
  double p = 0.5;
};
struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};
struct Beta {
  double a = 1.0;
  double b = 1.0;
};

/// Sampling distribution for the simulation settings.
class Dist {
 public:
  Dist(Bernoulli d) : v_(d) {  // NOLINT(google-explicit-constructor)
    if (!(d.p >= 0.0 && d.p <= 1.0)) throw parameter_error("Bernoulli p must be in [0, 1]");
  }
  Dist(Uniform d) : v_(d) {  // NOLINT(google-explicit-constructor)
    if (!(d.lo < d.hi)) throw parameter_error("Uniform requires lo < hi");
  }
  Dist(Beta d) : v_(d) {  // NOLINT(google-explicit-constructor)
    if (!(d.a > 0.0) || !(d.b > 0.0)) throw parameter_error("Beta shapes must be positive");
  }

  double mean() const {
    return std::visit(
        [](const auto& d) -> double {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, Bernoulli>) return d.p;
          if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (d.lo + d.hi);
          if constexpr (std::is_same_v<T, Beta>) return d.a / (d.a + d.b);
        },
        v_);
  }

  double sample(Rng& rng) const {
    return std::visit(
        [&rng](const auto& d) -> double {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, Bernoulli>) return rng.bernoulli(d.p) ? 1.0 : 0.0;
          if constexpr (std::is_same_v<T, Uniform>) return rng.uniform(d.lo, d.hi);
          if constexpr (std::is_same_v<T, Beta>) return rng.beta(d.a, d.b);
        },
        v_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& d) -> std::string {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, Bernoulli>) {
            return "Bernoulli(" + std::to_string(d.p) + ")";
          }
          if constexpr (std::is_same_v<T, Uniform>) {
            return "Uniform(" + std::to_string(d.lo) + ", " + std::to_string(d.hi) + ")";
          }
          if constexpr (std::is_same_v<T, Beta>) {
            return "Beta(" + std::to_string(d.a) + ", " + std::to_string(d.b) + ")";
          }
        },
        v_);
  }

 private:
  std::variant<Bernoulli, Uniform, Beta> v_;
};

}  // namespace evci
