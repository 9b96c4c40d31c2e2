// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dfcomb/comb.hpp"
#include "dfcomb/waveform.hpp"

namespace dfc {

/// Frequency convention: E(t) = int E(w) exp(-i w t) dw, w measured from
/// the transition frequency.
struct TransferFunction {
  std::vector<double> omega;  ///< rad/s
  std::vector<cplx> values;
};

std::vector<double> linear_omega_grid(double lo, double hi, std::size_t n);

/// prod_m exp(-(zeta0/2) gamma / (gamma + i (m beta_omega0 - w)))
cplx exact_transfer_at(const CombConfig& config, double omega);
TransferFunction exact_transfer(const CombConfig& config, std::span<const double> omega);

/// Default product truncation ceil(5 F / pi).
int default_product_terms(double finesse);

/// Large-finesse product form of the comb response:
///   exp(-pi z/4) prod_{n=1}^{n_max} exp(-(pi z/2) exp(-pi n/F) exp(i n w T0)),
/// z = zeta_eff0. n_max = 0 picks default_product_terms().
TransferFunction approx_transfer_product(const CombConfig& config,
                                         std::span<const double> omega, int n_max = 0);

/// True when the product form is outside its validity range (F < 5).
bool product_form_questionable(const CombConfig& config);

/// Spectral propagation through a static comb. Zero-pads to the next power of
/// two >= 4N that also leaves >= 5/gamma of ringing tail; grows the pad if
/// the estimated wrap-around energy exceeds 1e-6 of the total.
Waveform propagate_static(const CombConfig& config, const Waveform& input);

void write_transfer_csv(std::ostream& os, const TransferFunction& tf);

}  // namespace dfc
