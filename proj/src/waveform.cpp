// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/waveform.hpp"

#include <cmath>

#include "dfcomb/errors.hpp"

namespace dfc {

Waveform::Waveform(const TimeGrid& grid, std::vector<cplx> values)
    : t_start(grid.t_start), dt(grid.dt), samples(std::move(values)) {
  if (!(dt > 0.0)) throw ValidationError("waveform time step must be positive");
  if (samples.size() != grid.n) throw ValidationError("sample count does not match grid");
}

Waveform::Waveform(const TimeGrid& grid) : Waveform(grid, std::vector<cplx>(grid.n)) {}

double Waveform::energy() const {
  if (samples.size() < 2) return 0.0;
  double sum = 0.5 * (std::norm(samples.front()) + std::norm(samples.back()));
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum += std::norm(samples[i]);
  return sum * dt;
}

cplx Waveform::at(double t) const {
  if (samples.empty()) return {};
  const double x = (t - t_start) / dt;
  if (x < 0.0 || x > static_cast<double>(samples.size() - 1)) {
    // tolerate round-off at the end points
    if (std::abs(x) < 1e-9) return samples.front();
    if (std::abs(x - static_cast<double>(samples.size() - 1)) < 1e-9) return samples.back();
    return {};
  }
  const auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= samples.size()) return samples.back();
  const double f = x - static_cast<double>(i);
  return samples[i] * (1.0 - f) + samples[i + 1] * f;
}

}  // namespace dfc
