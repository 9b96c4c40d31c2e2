// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dfc {

using cplx = std::complex<double>;

struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.0;
  std::size_t n = 0;

  double time(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
  double t_end() const { return n == 0 ? t_start : time(n - 1); }
};

/// Complex field envelope on a uniform time grid.
struct Waveform {
  double t_start = 0.0;
  double dt = 0.0;
  std::vector<cplx> samples;

  Waveform() = default;
  Waveform(const TimeGrid& grid, std::vector<cplx> values);
  explicit Waveform(const TimeGrid& grid);

  std::size_t size() const { return samples.size(); }
  double time(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
  double t_end() const { return samples.empty() ? t_start : time(samples.size() - 1); }
  TimeGrid grid() const { return {t_start, dt, samples.size()}; }

  /// Trapezoid integral of |E|^2 over the whole grid.
  double energy() const;
  /// Linear interpolation; zero outside the grid.
  cplx at(double t) const;
};

}  // namespace dfc
