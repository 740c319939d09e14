#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "evci/dist.hpp"
#include "evci/support.hpp"

namespace evci {

enum class TrueRelation { Lower, Equal };

/// One simulated comparison setting: the two sampling laws, their declared
/// support bounds, and the ground-truth ordering of the means.
struct SettingSpec {
  std::string name;
  Dist dist_p;
  Dist dist_q;
  SupportBounds bounds_p;
  SupportBounds bounds_q;
  TrueRelation true_relation;
};

/// The six built-in settings: Bernoulli pairs (high variance), a Bernoulli
/// against Uniforms on wider supports, and Beta pairs (low variance), each in
/// an equal-means and a lower-mean variant.
inline const std::array<SettingSpec, 6>& builtin_settings() {
  static const std::array<SettingSpec, 6> settings = {{
      {"ber-equal", Bernoulli{0.5}, Bernoulli{0.5}, {0.0, 1.0}, {0.0, 1.0},
       TrueRelation::Equal},
      {"ber-lower", Bernoulli{0.5}, Bernoulli{0.6}, {0.0, 1.0}, {0.0, 1.0},
       TrueRelation::Lower},
      {"unif-ber-equal", Bernoulli{0.6}, Uniform{0.0, 1.2}, {0.0, 1.0}, {0.0, 1.2},
       TrueRelation::Equal},
      {"unif-ber-lower", Bernoulli{0.6}, Uniform{0.0, 1.4}, {0.0, 1.0}, {0.0, 1.4},
       TrueRelation::Lower},
      {"beta-equal", Beta{10.0, 30.0}, Beta{1.0, 3.0}, {0.0, 1.0}, {0.0, 1.0},
       TrueRelation::Equal},
      {"beta-lower", Beta{10.0, 30.0}, Beta{10.0, 15.0}, {0.0, 1.0}, {0.0, 1.0},
       TrueRelation::Lower},
  }};
  return settings;
}

inline std::optional<SettingSpec> find_setting(std::string_view name) {
  for (const SettingSpec& s : builtin_settings()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace evci
