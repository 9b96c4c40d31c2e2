// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the test binaries.

#pragma once

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

#include <json.hpp>

#include "dfcomb/scenario.hpp"
#include "dfcomb/td_solver.hpp"
#include "dfcomb/units.hpp"
#include "dfcomb/waveform.hpp"

namespace dfc::test {

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(DFCOMB_SCENARIO_DIR) / (name + ".json");
}

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(DFCOMB_TEST_DATA) / name;
}

inline Scenario bundled(const std::string& name) { return load_scenario(scenario_path(name)); }

/// ||a - b|| / ||b|| over common samples.
inline double rel_l2(const Waveform& a, const Waveform& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    num += std::norm(a.samples[i] - b.samples[i]);
    den += std::norm(b.samples[i]);
  }
  return std::sqrt(num / den);
}

/// A small GFC scenario that runs in a few milliseconds.
inline nlohmann::json small_gfc_doc() {
  return {{"name", "small"},
          {"transition", {{"name", "Fe57"}}},
          {"comb", {{"m_targets", 5}, {"zeta0", 8.0}, {"delta_v_mm_s", 3.075}}},
          {"pulse", {{"peaks", {{{"center_ns", 0.0}, {"fwhm_ns", 7.0}}}}}},
          {"solver", {{"dt_ns", 0.14}, {"t_end_ns", 70.0}}},
          {"outputs", {{"certify", false}}}};
}

struct Case {
  CombConfig comb;
  VelocitySchedule schedule;
  PulseSpec pulse;
  TimeGrid grid;
  SolverParams params;
};

inline Case from_scenario(const Scenario& sc) {
  return {sc.comb, sc.schedule, sc.pulse, sc.grid, sc.solver};
}

inline Waveform run(const Case& c, const Waveform& input) {
  return simulate(c.comb, c.schedule, input, c.params).output;
}

inline Waveform scaled(Waveform w, cplx a) {
  for (auto& s : w.samples) s *= a;
  return w;
}

/// Random scenario with a valid grid; keeps the run short.
inline Case random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  using units::ns;
  Case c;
  c.comb.transition = preset("Fe57");
  c.comb.m_targets = 2 * static_cast<int>(u(rng) * 5) + 1;
  c.comb.zeta0 = 30.0 * u(rng);
  const double t0 = ns(10.0 + 60.0 * u(rng));
  c.comb.delta_v = delta_v_for_spacing(c.comb.transition, units::kTwoPi / t0);
  const double fwhm = ns(2.0 + 8.0 * u(rng));
  c.pulse.peaks.push_back({cplx{u(rng) - 0.5, u(rng) - 0.5}, 0.0, fwhm});
  if (u(rng) < 0.5) c.pulse.peaks.push_back({cplx{0.0, u(rng)}, ns(15.0) + fwhm, fwhm});
  const double dt = std::min(fwhm / 50.0, units::kTwoPi / (10.0 * c.comb.m_targets * units::kTwoPi / t0));
  const double t_start = -6.0 * fwhm;
  const double t_end = ns(150.0);
  c.grid = {t_start, dt, static_cast<std::size_t>((t_end - t_start) / dt) + 1};
  c.params.pulse_fwhm = fwhm;
  c.params.sublayers = 8 + static_cast<int>(u(rng) * 8);
  switch (static_cast<int>(u(rng) * 5)) {
    case 0: c.schedule = make_gfc(); break;
    case 1: c.schedule = make_sgem(ns(5.0) + u(rng) * t0); break;
    case 2: c.schedule = make_hold(ns(20.0), ns(40.0) * u(rng) + ns(1.0)); break;
    case 3: c.schedule = make_boost(ns(20.0), ns(30.0), 1.0 + 3.0 * u(rng)); break;
    default: c.schedule = make_sine(ns(20.0), ns(40.0), 2.0 * u(rng), units::kTwoPi * 25e6, 0.0);
  }
  return c;
}

}  // namespace dfc::test
