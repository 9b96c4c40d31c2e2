// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfcomb/metrics.hpp"
#include "dfcomb/scenario.hpp"
#include "dfcomb/td_solver.hpp"

namespace dfc {

struct RunOutcome {
  Scenario scenario;
  Waveform input;
  SimResult sim;
  EchoReport report;
  std::optional<double> certification;  ///< convergence_probe, when requested
  nlohmann::json manifest;
};

/// Echo analysis shared by single runs and sweeps. Maxima are searched after
/// the last input peak plus one width and merged within two widths; echo
/// window energies (+- T0/2) are fractions of the input energy.
EchoReport analyze_output(const Scenario& scenario, const Waveform& input,
                          const Waveform& output);

/// Simulates and analyzes one scenario. Single-threaded.
RunOutcome run_scenario(const Scenario& scenario, bool certify);
inline RunOutcome run_scenario(const Scenario& scenario) {
  return run_scenario(scenario, scenario.certify);
}

void write_time_series_csv(std::ostream& os, const Waveform& input, const Waveform& output);

/// Writes time_series.csv, report.json, manifest.json and, when requested,
/// transfer.csv and polarization.csv into `dir`.
void write_artifacts(const RunOutcome& outcome, const std::filesystem::path& dir);

/// Relative L2 difference of the two solvers. Static schedules only.
double compare_solvers(const Scenario& scenario);

// --- sweeps ---------------------------------------------------------------

struct SweepAxis {
  std::string name;  ///< total_zeta, tooth_spacing_rad_s, zeta_eff0, m_targets, t_sw_ns
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;
  bool log = false;

  double value(int i) const;
};

struct SweepSpec {
  nlohmann::json base;  ///< scenario document
  std::vector<SweepAxis> axes;
  /// M * beta_omega0 held at this value when set, rad/s.
  std::optional<double> fixed_bandwidth;
  std::size_t budget = 2500;

  std::size_t total_points() const;
};

/// `base_dir` resolves a relative "scenario_file".
SweepSpec parse_sweep(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

struct SweepRow {
  std::vector<double> axis_values;
  std::string status = "ok";  ///< "ok" or the error kind at this point
  int m_targets = 0;
  double zeta0 = 0.0;
  double total_zeta = 0.0;
  double beta_omega0 = 0.0;
  double t0_ns = 0.0;
  double finesse = 0.0;
  double zeta_eff0 = 0.0;
  double t_ec_ns = 0.0;
  double eta_sim = 0.0;
  double eta_gfc_analytic = 0.0;
  double total_zeta_opt = 0.0;  ///< M F zeta_eff*, zeta_eff* maximizing the first-echo efficiency
  double sgem_bound = 0.0;
  double fidelity = 0.0;
  double post_leakage_fraction = 0.0;
};

/// The scenario document at one grid point, before parsing.
nlohmann::json sweep_point_document(const SweepSpec& spec, const std::vector<double>& values);

/// Rows come back in axis order (last axis fastest) for any worker count.
/// Throws BudgetError when the grid exceeds the budget.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// min(requested, DFCOMB_MAX_WORKERS); requested <= 0 means hardware concurrency.
int resolve_workers(int requested);

// --- analytic predictions -------------------------------------------------

struct PredictArgs {
  std::optional<std::string> preset;
  std::optional<double> energy_kev;
  std::optional<double> gamma_over_2pi_mhz;
  std::optional<double> delta_v_mm_s;
  int m_targets = 1;
  std::optional<double> zeta0;
  std::optional<double> finesse;
  std::optional<double> zeta_eff0;
  std::optional<double> pulse_fwhm_ns;
  std::optional<double> t_sw_ns;
  bool sgem = false;
  bool equal_split = false;
};

nlohmann::json predict(const PredictArgs& args);

}  // namespace dfc
