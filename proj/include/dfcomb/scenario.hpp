// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfcomb/comb.hpp"
#include "dfcomb/metrics.hpp"
#include "dfcomb/pulse.hpp"
#include "dfcomb/schedule.hpp"
#include "dfcomb/td_solver.hpp"

namespace dfc {

struct TransferRequest {
  double omega_min = 0.0;  ///< rad/s
  double omega_max = 0.0;
  std::size_t points = 0;
};

/// A fully validated run description.
///
/// Scenario files are JSON with unit-suffixed keys. Schedule times are
/// measured from the first pulse peak (t_in). `resolved` holds the input with
/// every default filled in, in file units; re-parsing it rebuilds the
/// identical run, which is what the run manifest relies on.
struct Scenario {
  std::string name;
  CombConfig comb;
  PulseSpec pulse;
  std::string protocol;
  VelocitySchedule schedule;
  TimeGrid grid;
  SolverParams solver;
  EchoMode mode = EchoMode::gfc;
  std::optional<double> t_ec;  ///< s; empty when no echo is expected
  double noise_floor = 1e-6;   ///< relative to the peak input intensity
  bool certify = true;
  bool write_time_series = true;
  bool write_report = true;
  std::optional<TransferRequest> transfer;
  std::vector<std::string> warnings;
  nlohmann::json resolved;

  double t_in() const { return pulse.t_in(); }
};

/// Validates every key; throws ValidationError naming the offending key path.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace dfc
