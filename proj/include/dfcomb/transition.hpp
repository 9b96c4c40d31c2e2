// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dfc {

/// A recoil-free nuclear transition.
struct NuclearTransition {
  std::string name;
  double energy_kev = 0.0;
  double gamma = 0.0;          ///< coherence decay rate, rad/s
  double lifetime_s = 0.0;     ///< excited-state lifetime; informational

  /// Resonance angular frequency E/hbar in rad/s.
  double omega0() const;
  void validate() const;
};

/// Built-in transitions: Fe57, Zn67, Sc45, Ag109 (case-insensitive).
NuclearTransition preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace dfc
