// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "dfcomb/transition.hpp"

namespace dfc {

/// A stack of M identical resonant targets moving at v_m = m * delta_v,
/// m = -(M-1)/2 ... (M-1)/2.
struct CombConfig {
  NuclearTransition transition;
  int m_targets = 1;
  double zeta0 = 0.0;     ///< per-target resonant optical thickness
  double delta_v = 0.0;   ///< velocity spacing, m/s

  // Carried for documentation only; the cascade is solved in the retarded
  // frame where target placement has no dynamical effect.
  double target_thickness = 0.0;
  std::vector<double> target_positions;

  void validate() const;

  int half_span() const { return (m_targets - 1) / 2; }
  /// Signed velocity index of the k-th target in propagation order.
  int index_of(int k) const { return k - half_span(); }
  double beta() const;
};

struct DerivedComb {
  double beta_omega0 = 0.0;     ///< tooth spacing, rad/s
  double t0 = 0.0;              ///< rephasing period, s (infinite if degenerate)
  double finesse = 0.0;
  std::optional<double> zeta_eff0;  ///< empty for a degenerate comb
  double total_zeta = 0.0;
  double comb_bandwidth = 0.0;  ///< M * beta_omega0, rad/s
  double coupling = 0.0;        ///< lumped |g|^2 N d = zeta0 * gamma / 2, rad/s

  bool degenerate() const { return !zeta_eff0.has_value(); }
};

DerivedComb derive_comb(const CombConfig& config);

/// Velocity spacing that produces the requested tooth spacing.
double delta_v_for_spacing(const NuclearTransition& transition, double beta_omega0);

/// Detuning of target index m for a static comb.
inline double detuning(const DerivedComb& derived, int m) {
  return m * derived.beta_omega0;
}

}  // namespace dfc
