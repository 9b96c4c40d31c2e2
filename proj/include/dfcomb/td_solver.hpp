// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dfcomb/comb.hpp"
#include "dfcomb/pulse.hpp"
#include "dfcomb/schedule.hpp"
#include "dfcomb/waveform.hpp"

namespace dfc {

struct SolverParams {
  double dt = 0.0;            ///< must match the input grid step; 0 accepts it
  int sublayers = 0;          ///< per target; 0 selects default_sublayers(zeta0)
  bool record_polarization = false;
  double t_end = 0.0;         ///< informational; the output grid is the input grid
  double pulse_fwhm = 0.0;    ///< enables the dt <= fwhm/50 check when > 0
  bool enforce_resolution = true;
  /// Velocity indices in propagation order; empty means ascending.
  std::vector<int> target_order;
};

struct SimDiagnostics {
  std::size_t steps = 0;
  int sublayers = 0;
  double input_energy = 0.0;
  double output_energy = 0.0;
  std::vector<std::string> warnings;
};

struct SimResult {
  Waveform output;
  /// Per target (propagation order), the midpoint sublayer polarization
  /// scaled to the whole target, i.e. P^m * d, in field units.
  std::vector<std::vector<cplx>> polarization;
  SimDiagnostics diagnostics;
};

/// max(8, ceil(zeta0 / 0.25)).
int default_sublayers(double zeta0);

/// Largest step satisfying both resolution preconditions of simulate().
double max_stable_dt(const CombConfig& config, double pulse_fwhm);

/// Integrates the one-way Maxwell-Bloch cascade in the retarded frame.
///
/// Targets are traversed in order m = -(M-1)/2 ... (M-1)/2 unless
/// params.target_order says otherwise, each split into L
/// optically thin sublayers. Each sublayer polarization p obeys
///   dp/dt = (-gamma - a/(2L) - i m phi'(t)) p - (a/L) E_in(t),
///   E_out = E_in + p,
/// i.e. it is driven by the field at the sublayer midpoint. The ODE is
/// advanced with an exponential integrator that is exact for a piecewise
/// linear drive; the detuning over a step uses the exact phase increment of
/// the schedule.
SimResult simulate(const CombConfig& config, const VelocitySchedule& schedule,
                   const Waveform& input, const SolverParams& params);

/// Relative L2 difference between runs at (dt, L) and (dt/2, 2L), compared
/// on the coarse grid.
double convergence_probe(const CombConfig& config, const VelocitySchedule& schedule,
                         const PulseSpec& pulse, const TimeGrid& grid,
                         const SolverParams& params);

}  // namespace dfc
