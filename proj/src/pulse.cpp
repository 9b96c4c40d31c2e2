// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dfcomb/errors.hpp"

namespace dfc {

namespace {

double decay_of(const PulseSpec& spec, const PulsePeak& peak) {
  return spec.decay_constant > 0.0 ? spec.decay_constant : peak.fwhm / std::numbers::ln2;
}

}  // namespace

void PulseSpec::validate() const {
  if (peaks.empty()) throw ValidationError("pulse needs at least one peak", "pulse.peaks");
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    const auto& p = peaks[i];
    const std::string key = "pulse.peaks[" + std::to_string(i) + "]";
    if (!(p.fwhm > 0.0) || !std::isfinite(p.fwhm))
      throw ValidationError("FWHM must be positive", key + ".fwhm_ns");
    if (!std::isfinite(p.center)) throw ValidationError("centre must be finite", key + ".center_ns");
    if (!std::isfinite(p.amplitude.real()) || !std::isfinite(p.amplitude.imag()))
      throw ValidationError("amplitude must be finite", key);
  }
  if (decay_constant < 0.0 || !std::isfinite(decay_constant))
    throw ValidationError("decay constant must be >= 0", "pulse.decay_ns");
}

double PulseSpec::min_fwhm() const {
  double m = peaks.front().fwhm;
  for (const auto& p : peaks) m = std::min(m, p.fwhm);
  return m;
}

double PulseSpec::max_extent() const {
  double t = -std::numeric_limits<double>::infinity();
  for (const auto& p : peaks) {
    const double tail = shape == PulseShape::gaussian ? 5.0 * p.fwhm : 5.0 * decay_of(*this, p);
    t = std::max(t, p.center + tail);
  }
  return t;
}

cplx pulse_value(const PulseSpec& spec, double t) {
  cplx sum{};
  for (const auto& p : spec.peaks) {
    const double x = t - p.center;
    if (spec.shape == PulseShape::gaussian) {
      // field half maximum at |x| = fwhm/2
      const double arg = 4.0 * std::numbers::ln2 * x * x / (p.fwhm * p.fwhm);
      sum += p.amplitude * std::exp(-arg);
    } else if (x >= 0.0) {
      sum += p.amplitude * std::exp(-x / decay_of(spec, p));
    }
  }
  return sum;
}

Waveform build_pulse(const PulseSpec& spec, const TimeGrid& grid, GridCheck check) {
  spec.validate();
  if (!(grid.dt > 0.0)) throw ValidationError("time step must be positive", "solver.dt_ns");
  if (check == GridCheck::enforce) {
    const double fwhm = spec.min_fwhm();
    if (grid.dt > fwhm / 20.0 * (1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "time step " << grid.dt << " s exceeds FWHM/20 = " << fwhm / 20.0 << " s";
      throw ResolutionError(msg.str());
    }
    for (const auto& p : spec.peaks) {
      if (p.center - 5.0 * p.fwhm < grid.t_start - 0.5 * grid.dt ||
          p.center + 5.0 * p.fwhm > grid.t_end() + 0.5 * grid.dt)
        throw CoverageError("grid does not cover every peak centre +/- 5 FWHM");
    }
  }
  Waveform w(grid);
  for (std::size_t i = 0; i < grid.n; ++i) w.samples[i] = pulse_value(spec, grid.time(i));
  return w;
}

}  // namespace dfc
