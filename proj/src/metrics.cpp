// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

const char* to_string(EchoMode mode) { return mode == EchoMode::gfc ? "gfc" : "sgem"; }

EchoMode echo_mode_from_string(const std::string& s) {
  if (s == "gfc") return EchoMode::gfc;
  if (s == "sgem") return EchoMode::sgem;
  throw ValidationError("echo mode must be 'gfc' or 'sgem'", "metrics.mode");
}

namespace {

struct IndexWindow {
  std::size_t first;
  std::size_t last;
};

IndexWindow snap(const Waveform& w, double t0, double t1) {
  const double x0 = std::round((t0 - w.t_start) / w.dt);
  const double x1 = std::round((t1 - w.t_start) / w.dt);
  if (x0 < 0.0 || x1 > static_cast<double>(w.size()) - 1.0 || x1 < x0)
    throw CoverageError("integration window [" + std::to_string(units::to_ns(t0)) + ", " +
                        std::to_string(units::to_ns(t1)) + "] ns is outside the sampled grid");
  return {static_cast<std::size_t>(x0), static_cast<std::size_t>(x1)};
}

double trapezoid_weight(std::size_t i, const IndexWindow& win) {
  return (i == win.first || i == win.last) ? 0.5 : 1.0;
}

}  // namespace

double window_energy(const Waveform& w, double t0, double t1) {
  const IndexWindow win = snap(w, t0, t1);
  if (win.first == win.last) return 0.0;
  double sum = 0.0;
  for (std::size_t i = win.first; i <= win.last; ++i)
    sum += trapezoid_weight(i, win) * std::norm(w.samples[i]);
  return sum * w.dt;
}

double efficiency(const Waveform& input, const Waveform& output, double t_in, double t_ec) {
  const double n_in = window_energy(input, t_in - 0.5 * t_ec, t_in + 0.5 * t_ec);
  const double n_out = window_energy(output, t_in + 0.5 * t_ec, t_in + 1.5 * t_ec);
  if (n_in == 0.0) throw ValidationError("input window carries no energy");
  return n_out / n_in;
}

std::optional<double> fidelity(const Waveform& input, const Waveform& output, double t_in,
                               double t_ec, EchoMode mode) {
  const IndexWindow win = snap(input, t_in - 0.5 * t_ec, t_in + 0.5 * t_ec);
  // The output window must be sampled as well.
  snap(output, t_in + 0.5 * t_ec, t_in + 1.5 * t_ec);
  const double sign = mode == EchoMode::gfc ? 1.0 : -1.0;
  cplx overlap{};
  double n_in = 0.0;
  double n_out = 0.0;
  // N_out is accumulated over the same mapped samples as the overlap, which
  // keeps the ratio bounded by one even when the mapping is off-grid.
  for (std::size_t i = win.first; i <= win.last; ++i) {
    const double wt = trapezoid_weight(i, win);
    const double t = input.time(i);
    const cplx e_in = input.samples[i];
    const cplx e_out = output.at(t_in + t_ec + sign * (t - t_in));
    overlap += wt * std::conj(e_in) * e_out;
    n_in += wt * std::norm(e_in);
    n_out += wt * std::norm(e_out);
  }
  if (n_out == 0.0 || n_in == 0.0) return std::nullopt;
  return std::min(1.0, std::norm(overlap) / (n_in * n_out));
}

std::vector<DetectedEcho> detect_echoes(const Waveform& output, double t_in,
                                        double noise_floor, const EchoDetection& options) {
  std::vector<DetectedEcho> found;
  const std::size_t n = output.size();
  if (n < 3) return found;
  std::vector<double> intensity(n);
  for (std::size_t i = 0; i < n; ++i) intensity[i] = std::norm(output.samples[i]);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double t = output.time(i);
    if (t <= t_in + options.exclusion) continue;
    const double a = intensity[i - 1], b = intensity[i], c = intensity[i + 1];
    if (!(b > noise_floor) || b < a || b <= c) continue;
    const double curvature = a - 2.0 * b + c;
    double offset = 0.0;
    if (curvature < 0.0) offset = std::clamp(0.5 * (a - c) / curvature, -0.5, 0.5);
    DetectedEcho e;
    e.peak_time = t + offset * output.dt;
    e.peak_intensity = b - 0.25 * (a - c) * offset;
    found.push_back(e);
  }

  // keep the strongest maximum within each min_separation neighbourhood
  std::sort(found.begin(), found.end(), [](const DetectedEcho& x, const DetectedEcho& y) {
    return x.peak_intensity > y.peak_intensity;
  });
  std::vector<DetectedEcho> kept;
  for (const auto& e : found) {
    const bool crowded = std::any_of(kept.begin(), kept.end(), [&](const DetectedEcho& k) {
      return std::abs(k.peak_time - e.peak_time) < options.min_separation;
    });
    if (!crowded) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end(), [](const DetectedEcho& x, const DetectedEcho& y) {
    return x.peak_time < y.peak_time;
  });
  for (auto& e : kept) {
    const double lo = std::max(output.t_start, e.peak_time - options.half_window);
    const double hi = std::min(output.t_end(), e.peak_time + options.half_window);
    e.window_energy = hi > lo ? window_energy(output, lo, hi) : 0.0;
  }
  return kept;
}

nlohmann::json to_json(const EchoReport& report) {
  nlohmann::json echoes = nlohmann::json::array();
  for (const auto& e : report.echoes) {
    echoes.push_back({{"peak_time_ns", units::to_ns(e.peak_time)},
                      {"window_energy", e.window_energy},
                      {"peak_intensity", e.peak_intensity}});
  }
  nlohmann::json j;
  j["echoes"] = std::move(echoes);
  j["efficiency"] = report.efficiency ? nlohmann::json(*report.efficiency) : nlohmann::json(nullptr);
  j["fidelity"] = report.fidelity ? nlohmann::json(*report.fidelity) : nlohmann::json(nullptr);
  j["t_ec_ns"] = units::to_ns(report.t_ec);
  j["mode"] = to_string(report.mode);
  j["post_leakage_fraction"] = report.post_leakage_fraction;
  return j;
}

}  // namespace dfc
