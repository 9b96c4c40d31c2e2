// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "dfcomb/waveform.hpp"

namespace dfc {

enum class PulseShape { gaussian, exponential };

struct PulsePeak {
  cplx amplitude{1.0, 0.0};
  double center = 0.0;  ///< s
  double fwhm = 0.0;    ///< field FWHM, s
};

/// Single- or multi-peak input photon envelope.
///
/// Gaussian peaks have field FWHM `fwhm` (intensity FWHM fwhm / sqrt 2).
/// Exponential peaks rise instantly at `center` and decay with
/// `decay_constant`; when that is zero it is derived from the field FWHM as
/// fwhm / ln 2.
struct PulseSpec {
  std::vector<PulsePeak> peaks;
  PulseShape shape = PulseShape::gaussian;
  double decay_constant = 0.0;

  void validate() const;
  double t_in() const { return peaks.front().center; }
  double min_fwhm() const;
  double max_extent() const;  ///< last center + 5 FWHM (or 5 decay constants)
};

enum class GridCheck { enforce, skip };

/// Samples the pulse on the grid. With GridCheck::enforce, refuses grids
/// with dt > fwhm/20 (ResolutionError) or that do not cover every peak
/// centre +/- 5 FWHM (CoverageError).
Waveform build_pulse(const PulseSpec& spec, const TimeGrid& grid,
                     GridCheck check = GridCheck::enforce);

/// Evaluates the closed-form envelope at a single time.
cplx pulse_value(const PulseSpec& spec, double t);

}  // namespace dfc
