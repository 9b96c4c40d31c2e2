// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dfc {

inline constexpr double kForever = std::numeric_limits<double>::infinity();

struct ConstantScale {
  double scale = 1.0;
};

/// s(t) = base + amplitude * sin(angular_freq * (t - t_begin) + phase)
struct Sinusoid {
  double base = 1.0;
  double amplitude = 0.0;
  double angular_freq = 0.0;
  double phase = 0.0;
};

using ScaleLaw = std::variant<ConstantScale, Sinusoid>;

struct Segment {
  double t_begin = 0.0;
  double t_end = kForever;
  ScaleLaw law;
};

/// Global velocity scaling s(t): target m moves at m * delta_v * s(t), so its
/// detuning is m * beta_omega0 * s(t). Outside every segment s = 1.
class VelocitySchedule {
 public:
  VelocitySchedule() = default;
  /// Throws ValidationError on overlapping, unsorted or empty segments.
  explicit VelocitySchedule(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }

  /// True when s(t) = 1 everywhere (a static comb).
  bool is_static() const;

  double scale_at(double t) const;
  /// Integral of s from 0 to t (negative for t < 0), in closed form.
  double integrated_scale(double t) const;

 private:
  std::vector<Segment> segments_;
};

double scale_at(const VelocitySchedule& schedule, double t);

/// Per-unit-index phase phi(t) = beta_omega0 * int_0^t s; target m carries m*phi.
double accumulated_phase(const VelocitySchedule& schedule, double beta_omega0, double t);

struct PredictedEcho {
  double time = 0.0;
  /// The phases stayed aligned through a hold; `time` is the resumption.
  bool held = false;
};

/// All t in (t_in, t_in + horizon] where phi(t) - phi(t_in) = 0 mod 2 pi.
std::vector<PredictedEcho> predict_echo_times(const VelocitySchedule& schedule,
                                              double beta_omega0, double t_in,
                                              double horizon);

VelocitySchedule make_gfc();
/// Reverses every velocity at `t_switch` (absolute time) for good.
VelocitySchedule make_sgem(double t_switch);
VelocitySchedule make_hold(double t_stop, double duration);
VelocitySchedule make_boost(double t_begin, double t_end, double scale);
VelocitySchedule make_sine(double t_begin, double t_end, double amplitude,
                           double angular_freq, double phase, double base = 1.0);

/// Union of the two segment lists; throws ValidationError if they overlap.
VelocitySchedule compose(const VelocitySchedule& a, const VelocitySchedule& b);

/// Boost scale that adds `delta_phi` between adjacent targets over the window.
double boost_scale_for_phase(double delta_phi, double beta_omega0, double t_begin,
                             double t_end);

/// First echo after a boost window ending at t_f:
/// t_in + (p - dphi/2pi) T0 with p = ceil((t_f - t_in)/T0 + dphi/2pi).
double boost_echo_time(double t_in, double t_f, double delta_phi, double t0);

/// Warning text when t_sw (relative to t_in) lies outside
/// (delta_t/2, T0 - delta_t/2), where the SGEM echo is no longer the first
/// retrieval. Empty when the switch time is fine.
std::optional<std::string> sgem_window_warning(double t_sw, double delta_t, double t0);

}  // namespace dfc
