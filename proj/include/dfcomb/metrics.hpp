// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfcomb/waveform.hpp"

namespace dfc {

enum class EchoMode { gfc, sgem };

const char* to_string(EchoMode mode);
EchoMode echo_mode_from_string(const std::string& s);

/// Trapezoid integral of |E|^2 over [t0, t1], limits snapped to the nearest
/// samples. Throws CoverageError if the window leaves the grid.
double window_energy(const Waveform& w, double t0, double t1);

/// N_out / N_in with N_in over t_in +/- t_ec/2 of the input and N_out over
/// [t_in + t_ec/2, t_in + 3 t_ec/2] of the output.
double efficiency(const Waveform& input, const Waveform& output, double t_in, double t_ec);

/// |int_in E_in*(t) E_out(t_in + t_ec +/- (t - t_in)) dt|^2 / (N_in N_out),
/// '+' for GFC and '-' (time reversed) for SGEM. Empty when N_out = 0.
std::optional<double> fidelity(const Waveform& input, const Waveform& output,
                               double t_in, double t_ec, EchoMode mode);

struct DetectedEcho {
  double peak_time = 0.0;
  double window_energy = 0.0;
  double peak_intensity = 0.0;
};

struct EchoDetection {
  double exclusion = 0.0;     ///< ignore t <= t_in + exclusion (the leakage)
  double half_window = 0.0;   ///< energy window half-width, usually T0/2
  double min_separation = 0.0;  ///< merge maxima closer than this
};

/// Local maxima of |E|^2 above `noise_floor` (absolute intensity), refined
/// with a parabola through the three samples around each maximum.
std::vector<DetectedEcho> detect_echoes(const Waveform& output, double t_in,
                                        double noise_floor, const EchoDetection& options);

struct EchoReport {
  std::vector<DetectedEcho> echoes;
  std::optional<double> efficiency;  ///< empty when no echo time is defined
  std::optional<double> fidelity;
  double t_ec = 0.0;
  EchoMode mode = EchoMode::gfc;
  /// Output energy after the leakage window, over the input energy.
  double post_leakage_fraction = 0.0;
};

nlohmann::json to_json(const EchoReport& report);

}  // namespace dfc
