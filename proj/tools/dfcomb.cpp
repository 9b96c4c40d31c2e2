// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: simulate, sweep, predict, compare, presets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfcomb/errors.hpp"
#include "dfcomb/harness.hpp"
#include "dfcomb/transition.hpp"
#include "dfcomb/units.hpp"

namespace {

using nlohmann::json;

int exit_code(const dfc::Error& e) {
  const std::string kind = e.kind();
  if (kind == "divergence") return 3;
  if (kind == "budget") return 4;
  return 2;
}

void report_error(const dfc::Error& e, bool as_json) {
  if (!as_json) {
    std::cerr << "dfcomb: " << e.kind() << " error: " << e.what() << '\n';
    return;
  }
  json j = {{"error", e.kind()}, {"message", e.what()}};
  if (const auto* v = dynamic_cast<const dfc::ValidationError*>(&e); v && !v->key_path().empty())
    j["key_path"] = v->key_path();
  if (const auto* d = dynamic_cast<const dfc::DivergenceError*>(&e)) j["step"] = d->step();
  if (const auto* p = dynamic_cast<const dfc::PaddingError*>(&e))
    j["required_length"] = p->required_length();
  std::cout << j.dump() << '\n';
}

int run_simulate(const std::string& file, const std::string& out_dir) {
  const dfc::Scenario sc = dfc::load_scenario(file);
  const dfc::RunOutcome run = dfc::run_scenario(sc);
  const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(sc.name) : std::filesystem::path(out_dir);
  dfc::write_artifacts(run, dir);
  json summary = dfc::to_json(run.report);
  summary["scenario"] = sc.name;
  summary["output_dir"] = dir.string();
  summary["certification"] = run.manifest["manifest"]["certification"];
  summary["warnings"] = run.manifest["manifest"]["warnings"];
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_sweep(const std::string& file, int workers, const std::string& out) {
  const std::filesystem::path path(file);
  const dfc::SweepSpec spec = dfc::parse_sweep(dfc::read_json_file(path), path.parent_path());
  const auto rows = dfc::run_sweep(spec, workers);
  if (out.empty()) {
    dfc::write_sweep_csv(std::cout, spec, rows);
  } else {
    std::ofstream os(out);
    if (!os) throw dfc::ValidationError("cannot write " + out);
    dfc::write_sweep_csv(os, spec, rows);
  }
  return 0;
}

int run_compare(const std::string& file) {
  const dfc::Scenario sc = dfc::load_scenario(file);
  const double err = dfc::compare_solvers(sc);
  std::cout << json{{"scenario", sc.name}, {"relative_l2", err}}.dump(2) << '\n';
  return 0;
}

int run_presets() {
  json list = json::array();
  for (const auto& name : dfc::preset_names()) {
    const dfc::NuclearTransition t = dfc::preset(name);
    list.push_back({{"name", t.name},
                    {"energy_kev", t.energy_kev},
                    {"gamma_over_2pi_mhz", dfc::units::mhz_from_angular(t.gamma)},
                    {"lifetime_ns", dfc::units::to_ns(t.lifetime_s)}});
  }
  std::cout << list.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doppler frequency comb gamma-photon memory simulator"};
  app.require_subcommand(1);
  bool error_json = false;
  app.add_flag("--error-json", error_json, "Print errors as JSON on stdout");

  std::string file, out_dir, sweep_out;
  int workers = 0;

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write its artifacts");
  simulate->add_option("file", file, "Scenario JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("-o,--out", out_dir, "Output directory (default: the scenario name)");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV");
  sweep->add_option("file", file, "Sweep JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("-j,--workers", workers, "Worker threads (0: all cores)");
  sweep->add_option("-o,--out", sweep_out, "CSV path (default: stdout)");

  dfc::PredictArgs pa;
  auto* predict = app.add_subcommand("predict", "Print analytic predictions as JSON");
  predict->add_option("--preset", pa.preset, "Transition preset (default fe57)");
  predict->add_option("--energy-kev", pa.energy_kev, "Override the transition energy");
  predict->add_option("--gamma-mhz", pa.gamma_over_2pi_mhz, "Override Gamma/2pi in MHz");
  predict->add_option("--delta-v", pa.delta_v_mm_s, "Velocity spacing in mm/s");
  predict->add_option("--m", pa.m_targets, "Number of targets (odd)");
  predict->add_option("--zeta0", pa.zeta0, "Per-target optical thickness");
  predict->add_option("--finesse", pa.finesse, "Comb finesse");
  predict->add_option("--zeta-eff", pa.zeta_eff0, "Effective thickness zeta0/F");
  predict->add_option("--pulse-fwhm", pa.pulse_fwhm_ns, "Pulse FWHM in ns");
  predict->add_option("--t-sw", pa.t_sw_ns, "SGEM switch time after t_in, ns");
  predict->add_flag("--sgem", pa.sgem, "Include the SGEM bound");
  predict->add_flag("--equal-split", pa.equal_split, "Include the equal-split thickness");

  auto* compare = app.add_subcommand("compare", "Cross-check the two solvers on a scenario");
  compare->add_option("file", file, "Scenario JSON")->required()->check(CLI::ExistingFile);

  auto* presets = app.add_subcommand("presets", "List built-in transitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; bad arguments count as validation failures
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(file, out_dir);
    if (*sweep) return run_sweep(file, workers, sweep_out);
    if (*predict) {
      std::cout << dfc::predict(pa).dump(2) << '\n';
      return 0;
    }
    if (*compare) return run_compare(file);
    if (*presets) return run_presets();
  } catch (const dfc::Error& e) {
    report_error(e, error_json);
    return exit_code(e);
  } catch (const nlohmann::json::exception& e) {
    report_error(dfc::ValidationError(e.what()), error_json);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dfcomb: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
