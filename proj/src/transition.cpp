// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/transition.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

double NuclearTransition::omega0() const {
  return energy_kev * units::kJoulePerKev / units::kHbar;
}

void NuclearTransition::validate() const {
  if (!(energy_kev > 0.0) || !std::isfinite(energy_kev))
    throw ValidationError("transition energy must be positive", "transition.energy_kev");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("coherence decay rate must be positive",
                          "transition.gamma_over_2pi_mhz");
  const double w0 = omega0();
  if (!(w0 > 0.0) || !std::isfinite(w0))
    throw ValidationError("resonance frequency is not finite", "transition.energy_kev");
}

namespace {

// Lifetime-broadened lines: coherence time T2 = 2 * lifetime, gamma = 1/T2.
// Fe57 uses the measured room-temperature linewidth gamma/2pi = 0.55 MHz.
NuclearTransition make_fe57() {
  return {"Fe57", 14.4, units::angular_from_mhz(0.55), 141e-9};
}
NuclearTransition make_zn67() {
  const double t2 = 13.6 * units::kMicrosecond;
  return {"Zn67", 93.3, 1.0 / t2, 0.5 * t2};
}
NuclearTransition make_sc45() {
  const double lifetime = 0.46;
  return {"Sc45", 12.4, 1.0 / (2.0 * lifetime), lifetime};
}
NuclearTransition make_ag109() {
  const double lifetime = 57.1;
  return {"Ag109", 88.0, 1.0 / (2.0 * lifetime), lifetime};
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<std::string> preset_names() { return {"Fe57", "Zn67", "Sc45", "Ag109"}; }

NuclearTransition preset(std::string_view name) {
  const std::string key = lower(name);
  if (key == "fe57") return make_fe57();
  if (key == "zn67") return make_zn67();
  if (key == "sc45") return make_sc45();
  if (key == "ag109") return make_ag109();
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw LookupError("unknown transition preset '" + std::string(name) +
                    "'; available: " + known);
}

}  // namespace dfc
