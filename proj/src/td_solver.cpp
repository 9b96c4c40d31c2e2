// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/td_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

namespace {

// Exponential-integrator weights for dp/dt = mu p + f(t), f linear over a
// step of length h:
//   p1 = e^{mu h} p0 + h phi1(mu h) f0 + h phi2(mu h) (f1 - f0)
struct StepWeights {
  cplx decay;
  cplx w0;  // multiplies f0
  cplx w1;  // multiplies (f1 - f0)
};

StepWeights step_weights(cplx mu, double h, double drive) {
  const cplx z = mu * h;
  cplx phi1, phi2;
  if (std::abs(z) < 0.1) {
    // phi_k(z) = sum_j z^j / (j + k)!
    cplx term1{1.0}, term2{0.5};
    phi1 = term1;
    phi2 = term2;
    for (int j = 1; j < 12; ++j) {
      term1 *= z / static_cast<double>(j + 1);
      term2 *= z / static_cast<double>(j + 2);
      phi1 += term1;
      phi2 += term2;
    }
  } else {
    const cplx ez = std::exp(z);
    phi1 = (ez - 1.0) / z;
    phi2 = (ez - 1.0 - z) / (z * z);
  }
  return {std::exp(z), -drive * h * phi1, -drive * h * phi2};
}

struct Cell {
  cplx p;      // sublayer contribution to the field
  cplx drive;  // field entering the sublayer at the previous step
};

// Limits are compared with a little slack so that a step chosen as exactly
// FWHM/50 in decimal nanoseconds is not rejected by rounding.
bool exceeds(double dt, double limit) { return dt > limit * (1.0 + 1e-9); }

void check_preconditions(const CombConfig& config, const DerivedComb& derived,
                         const Waveform& input, const SolverParams& params) {
  if (input.size() < 2) throw ValidationError("input waveform needs at least two samples");
  if (!(input.dt > 0.0)) throw ValidationError("input time step must be positive");
  if (params.dt != 0.0 && std::abs(params.dt - input.dt) > 1e-9 * input.dt)
    throw ValidationError("solver dt differs from the input grid step", "solver.dt_ns");
  if (params.sublayers < 0) throw ValidationError("sublayer count must be >= 0", "solver.sublayers");
  if (!params.target_order.empty()) {
    std::vector<int> sorted = params.target_order;
    std::sort(sorted.begin(), sorted.end());
    bool permutation = static_cast<int>(sorted.size()) == config.m_targets;
    for (int k = 0; permutation && k < config.m_targets; ++k)
      permutation = sorted[k] == config.index_of(k);
    if (!permutation)
      throw ValidationError("target order must permute the velocity indices", "solver.target_order");
  }
  if (!params.enforce_resolution) return;
  if (derived.beta_omega0 > 0.0) {
    const double limit = units::kTwoPi / (10.0 * config.m_targets * derived.beta_omega0);
    if (exceeds(input.dt, limit)) {
      std::ostringstream msg;
      msg << "dt = " << input.dt << " s does not resolve the comb bandwidth; need dt <= "
          << limit << " s";
      throw ResolutionError(msg.str());
    }
  }
  if (params.pulse_fwhm > 0.0 && exceeds(input.dt, params.pulse_fwhm / 50.0)) {
    std::ostringstream msg;
    msg << "dt = " << input.dt << " s does not resolve the pulse; need dt <= FWHM/50 = "
        << params.pulse_fwhm / 50.0 << " s";
    throw ResolutionError(msg.str());
  }
}

}  // namespace

int default_sublayers(double zeta0) {
  return std::max(8, static_cast<int>(std::ceil(zeta0 / 0.25)));
}

double max_stable_dt(const CombConfig& config, double pulse_fwhm) {
  const DerivedComb d = derive_comb(config);
  double dt = pulse_fwhm > 0.0 ? pulse_fwhm / 50.0 : std::numeric_limits<double>::infinity();
  if (d.beta_omega0 > 0.0)
    dt = std::min(dt, units::kTwoPi / (10.0 * config.m_targets * d.beta_omega0));
  return dt;
}

SimResult simulate(const CombConfig& config, const VelocitySchedule& schedule,
                   const Waveform& input, const SolverParams& params) {
  const DerivedComb derived = derive_comb(config);
  check_preconditions(config, derived, input, params);

  const int m_targets = config.m_targets;
  const int layers = params.sublayers > 0 ? params.sublayers : default_sublayers(config.zeta0);
  const std::size_t n = input.size();
  const double h = input.dt;
  const double gamma = config.transition.gamma;
  const double kappa = derived.coupling / layers;

  SimResult result;
  result.output = Waveform(input.grid());
  result.diagnostics.sublayers = layers;
  result.diagnostics.input_energy = input.energy();
  if (config.zeta0 / layers > 0.5) {
    result.diagnostics.warnings.push_back(
        "sublayers thicker than 0.5 optical depths; consider more sublayers");
  }

  // Without coupling every sublayer is the identity map.
  if (config.zeta0 == 0.0) {
    result.output.samples = input.samples;
    result.diagnostics.steps = n - 1;
    result.diagnostics.output_energy = result.diagnostics.input_energy;
    if (params.record_polarization)
      result.polarization.assign(m_targets, std::vector<cplx>(n));
    return result;
  }

  std::vector<Cell> cells(static_cast<std::size_t>(m_targets) * layers,
                          Cell{cplx{}, input.samples[0]});
  if (params.record_polarization) result.polarization.assign(m_targets, std::vector<cplx>(n));

  std::vector<int> order(m_targets);
  for (int k = 0; k < m_targets; ++k)
    order[k] = params.target_order.empty() ? config.index_of(k) : params.target_order[k];

  const bool is_static = schedule.is_static();
  std::vector<StepWeights> weights(m_targets);
  auto fill_weights = [&](double phase_step) {
    for (int k = 0; k < m_targets; ++k) {
      const double detuning = order[k] * phase_step / h;
      const cplx mu{-gamma - 0.5 * kappa, -detuning};
      weights[k] = step_weights(mu, h, kappa);
    }
  };
  if (is_static) fill_weights(derived.beta_omega0 * h);

  auto& out = result.output.samples;
  out[0] = input.samples[0];
  double phi_prev = accumulated_phase(schedule, derived.beta_omega0, input.t_start);
  const std::size_t mid = static_cast<std::size_t>(layers / 2);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!is_static) {
      const double phi_next = accumulated_phase(schedule, derived.beta_omega0, input.time(i + 1));
      fill_weights(phi_next - phi_prev);
      phi_prev = phi_next;
    }
    cplx e = input.samples[i + 1];
    for (int k = 0; k < m_targets; ++k) {
      const StepWeights w = weights[k];
      Cell* cell = cells.data() + static_cast<std::size_t>(k) * layers;
      for (int l = 0; l < layers; ++l, ++cell) {
        const cplx p = w.decay * cell->p + w.w0 * cell->drive + w.w1 * (e - cell->drive);
        cell->drive = e;
        cell->p = p;
        e += p;
      }
      if (params.record_polarization)
        result.polarization[k][i + 1] =
            cells[static_cast<std::size_t>(k) * layers + mid].p * static_cast<double>(layers);
    }
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      std::ostringstream msg;
      msg << "non-finite field at step " << i + 1;
      throw DivergenceError(msg.str(), i + 1);
    }
    out[i + 1] = e;
  }
  result.diagnostics.steps = n - 1;
  result.diagnostics.output_energy = result.output.energy();
  return result;
}

double convergence_probe(const CombConfig& config, const VelocitySchedule& schedule,
                         const PulseSpec& pulse, const TimeGrid& grid,
                         const SolverParams& params) {
  const GridCheck check = params.enforce_resolution ? GridCheck::enforce : GridCheck::skip;
  const Waveform coarse_in = build_pulse(pulse, grid, check);
  SolverParams coarse_params = params;
  coarse_params.dt = grid.dt;
  coarse_params.record_polarization = false;
  const int layers = params.sublayers > 0 ? params.sublayers : default_sublayers(config.zeta0);
  coarse_params.sublayers = layers;
  const Waveform coarse = simulate(config, schedule, coarse_in, coarse_params).output;

  const TimeGrid fine_grid{grid.t_start, 0.5 * grid.dt, 2 * grid.n - 1};
  const Waveform fine_in = build_pulse(pulse, fine_grid, check);
  SolverParams fine_params = coarse_params;
  fine_params.dt = fine_grid.dt;
  fine_params.sublayers = 2 * layers;
  const Waveform fine = simulate(config, schedule, fine_in, fine_params).output;

  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    diff += std::norm(fine.samples[2 * i] - coarse.samples[i]);
    norm += std::norm(fine.samples[2 * i]);
  }
  if (norm == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(diff / norm);
}

}  // namespace dfc
