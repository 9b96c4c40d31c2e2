// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/analytics.hpp"

#include <cmath>
#include <limits>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

using units::kPi;

double gfc_first_echo_efficiency(double zeta_eff0, double finesse) {
  const double amp = 0.5 * kPi * zeta_eff0 * std::exp(-0.25 * kPi * zeta_eff0) *
                     std::exp(-kPi / finesse);
  return amp * amp;
}

Waveform gfc_two_term_output(const Waveform& input, double zeta_eff0, double finesse,
                             double t0) {
  const double leak = std::exp(-0.25 * kPi * zeta_eff0);
  const double echo = 0.5 * kPi * zeta_eff0 * leak * std::exp(-kPi / finesse);
  Waveform out(input.grid());
  const double shift = t0 / input.dt;
  const double nearest = std::round(shift);
  const bool on_grid = std::abs(shift - nearest) < 1e-9 * std::max(1.0, shift);
  for (std::size_t i = 0; i < input.size(); ++i) {
    cplx delayed;
    if (on_grid) {
      const auto lag = static_cast<long long>(nearest);
      const auto j = static_cast<long long>(i) - lag;
      if (j >= 0 && j < static_cast<long long>(input.size()))
        delayed = input.samples[static_cast<std::size_t>(j)];
    } else {
      delayed = input.at(input.time(i) - t0);
    }
    out.samples[i] = leak * input.samples[i] - echo * delayed;
  }
  return out;
}

EfficiencyOptimum maximize_gfc_efficiency(double finesse) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 10.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = gfc_first_echo_efficiency(c, finesse);
  double fd = gfc_first_echo_efficiency(d, finesse);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = gfc_first_echo_efficiency(c, finesse);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = gfc_first_echo_efficiency(d, finesse);
    }
  }
  const double z = 0.5 * (a + b);
  return {z, gfc_first_echo_efficiency(z, finesse)};
}

double optimal_zeta0(double finesse) { return 4.0 * finesse / kPi; }

ConditionReport check_conditions(int m_targets, double delta_t, double gamma,
                                 double finesse) {
  ConditionReport r;
  r.finesse_upper = kPi / (delta_t * gamma);
  r.finesse_lower = r.finesse_upper / m_targets;
  r.coverage = finesse > r.finesse_lower;
  r.resolvable = finesse < r.finesse_upper;
  r.feasible = r.finesse_upper > r.finesse_lower;
  r.high_finesse = finesse >= 10.0;
  r.t0 = finesse > 0.0 ? kPi / (gamma * finesse) : std::numeric_limits<double>::infinity();
  r.lower_margin = finesse / r.finesse_lower;
  r.upper_margin = finesse > 0.0 ? r.finesse_upper / finesse
                                 : std::numeric_limits<double>::infinity();
  return r;
}

double equal_split_zeta(double finesse) { return 2.0 / kPi * std::exp(kPi / finesse); }

double sgem_efficiency_bound(double zeta_eff0, double gamma, double t_sw) {
  const double stored = 1.0 - std::exp(-0.5 * kPi * zeta_eff0);
  return stored * stored * std::exp(-4.0 * gamma * t_sw);
}

namespace {

double j1_series(double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = half;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 5) break;
  }
  return sum;
}

// Hankel expansion, x > 0 large:
//   J1(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - 3 pi/4,
// with a_k = prod_{j<=k} (4 - (2j-1)^2) / (k! 8^k).
double j1_asymptotic(double x) {
  constexpr double mu = 4.0;
  double p = 0.0, q = 0.0;
  double a = 1.0;          // a_k / x^k
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (8.0 * k * x);
    }
    const double mag = std::abs(a);
    if (mag > last) break;  // asymptotic series started diverging
    last = mag;
    // signs: P = a0 - a2 + a4 ..., Q = a1 - a3 + a5 ...
    const int r = k % 4;
    if (r == 0) p += a;
    else if (r == 1) q += a;
    else if (r == 2) p -= a;
    else q -= a;
    if (mag < 1e-17) break;
  }
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  if (x < 0.0) return -bessel_j1(-x);
  if (x <= 12.0) return j1_series(x);
  return j1_asymptotic(x);
}

double response_kernel(double t, double zeta0, double gamma) {
  if (t < 0.0 || !std::isfinite(t)) throw DomainError("response kernel needs t >= 0");
  const double y = 0.5 * zeta0 * gamma * t;
  double shape;
  if (y < 1e-8) {
    // J1(2 sqrt y)/sqrt y = 1 - y/2 + y^2/12 - ...
    shape = 1.0 - 0.5 * y + y * y / 12.0;
  } else {
    const double s = std::sqrt(y);
    shape = bessel_j1(2.0 * s) / s;
  }
  return std::exp(-gamma * t) * shape;
}

}  // namespace dfc
