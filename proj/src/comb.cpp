// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/comb.hpp"

#include <cmath>
#include <limits>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

double CombConfig::beta() const { return delta_v / units::kSpeedOfLight; }

void CombConfig::validate() const {
  transition.validate();
  if (m_targets < 1 || m_targets % 2 == 0)
    throw ValidationError("target count must be odd and >= 1", "comb.m_targets");
  if (!(zeta0 >= 0.0) || !std::isfinite(zeta0))
    throw ValidationError("optical thickness must be finite and >= 0", "comb.zeta0");
  if (!(delta_v >= 0.0) || !std::isfinite(delta_v))
    throw ValidationError("velocity spacing must be finite and >= 0", "comb.delta_v_mm_s");
  // Outermost target must stay far below c for the first-order Doppler shift.
  if (half_span() * beta() > 1e-3)
    throw ValidationError("target velocities are not small compared with c",
                          "comb.delta_v_mm_s");
}

DerivedComb derive_comb(const CombConfig& config) {
  config.validate();
  DerivedComb d;
  const double gamma = config.transition.gamma;
  d.beta_omega0 = config.beta() * config.transition.omega0();
  d.total_zeta = config.m_targets * config.zeta0;
  d.comb_bandwidth = config.m_targets * d.beta_omega0;
  d.coupling = 0.5 * config.zeta0 * gamma;
  if (d.beta_omega0 == 0.0) {
    d.t0 = std::numeric_limits<double>::infinity();
    d.finesse = 0.0;
    return d;
  }
  d.t0 = units::kTwoPi / d.beta_omega0;
  d.finesse = d.beta_omega0 / (2.0 * gamma);
  d.zeta_eff0 = config.zeta0 / d.finesse;
  return d;
}

double delta_v_for_spacing(const NuclearTransition& transition, double beta_omega0) {
  return beta_omega0 * units::kSpeedOfLight / transition.omega0();
}

}  // namespace dfc
