// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dfcomb/waveform.hpp"

namespace dfc {

/// Closed-form design quantities for a gradient frequency comb.
struct GfcDesign {
  double zeta_eff0 = 0.0;
  double finesse = 0.0;
  double t0 = 0.0;
  int m_targets = 1;
  double delta_t = 0.0;
  double gamma = 0.0;
};

/// First-echo efficiency of the two-term GFC response:
/// ((pi z/2) exp(-pi z/4) exp(-pi/F))^2.
double gfc_first_echo_efficiency(double zeta_eff0, double finesse);

/// Leakage minus delayed echo:
/// exp(-pi z/4) E(t) - (pi z/2) exp(-pi z/4) exp(-pi/F) E(t - T0).
/// Valid up to one period after the input.
Waveform gfc_two_term_output(const Waveform& input, double zeta_eff0, double finesse,
                             double t0);

struct EfficiencyOptimum {
  double zeta_eff0 = 0.0;
  double efficiency = 0.0;
};

/// Golden-section maximisation of gfc_first_echo_efficiency over zeta_eff0.
EfficiencyOptimum maximize_gfc_efficiency(double finesse);

/// zeta0 = 4 F / pi.
double optimal_zeta0(double finesse);

struct ConditionReport {
  double finesse_lower = 0.0;   ///< pi / (M dt gamma)
  double finesse_upper = 0.0;   ///< pi / (dt gamma)
  bool coverage = false;        ///< finesse > finesse_lower  <=>  T0 < M dt
  bool resolvable = false;      ///< finesse < finesse_upper  <=>  dt < T0
  bool feasible = false;        ///< the band (lower, upper) is non-empty
  bool high_finesse = false;    ///< F >> 1, taken as F >= 10
  double t0 = 0.0;
  double lower_margin = 0.0;    ///< finesse / finesse_lower
  double upper_margin = 0.0;    ///< finesse_upper / finesse
  bool satisfied() const { return coverage && resolvable; }
};

ConditionReport check_conditions(int m_targets, double delta_t, double gamma,
                                 double finesse);

/// zeta_eff0 at which leakage and first echo carry equal energy:
/// (2/pi) exp(pi/F).
double equal_split_zeta(double finesse);

/// (1 - exp(-pi z/2))^2 exp(-4 gamma T_sw), z = per-target zeta_eff0.
double sgem_efficiency_bound(double zeta_eff0, double gamma, double t_sw);

/// First-order Bessel function of the first kind. Power series for |x| <= 12,
/// Hankel asymptotic expansion beyond.
double bessel_j1(double x);

/// exp(-gamma t) J1(2 sqrt(y)) / sqrt(y), y = zeta0 gamma t / 2; equals 1 at
/// t = 0. Throws DomainError for t < 0.
double response_kernel(double t, double zeta0, double gamma);

}  // namespace dfc
