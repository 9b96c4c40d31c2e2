// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double law_value(const Segment& seg, double t) {
  return std::visit(
      overloaded{[](const ConstantScale& c) { return c.scale; },
                 [&](const Sinusoid& s) {
                   return s.base + s.amplitude * std::sin(s.angular_freq * (t - seg.t_begin) + s.phase);
                 }},
      seg.law);
}

// int_a^b (s - 1) over [a, b] intersected with the segment, a <= b.
double excess_integral(const Segment& seg, double a, double b) {
  const double lo = std::max(a, seg.t_begin);
  const double hi = std::min(b, seg.t_end);
  if (!(hi > lo)) return 0.0;
  return std::visit(
      overloaded{[&](const ConstantScale& c) { return (c.scale - 1.0) * (hi - lo); },
                 [&](const Sinusoid& s) {
                   double v = (s.base - 1.0) * (hi - lo);
                   if (s.angular_freq == 0.0) return v + s.amplitude * std::sin(s.phase) * (hi - lo);
                   const double w = s.angular_freq;
                   v += s.amplitude / w *
                        (std::cos(w * (lo - seg.t_begin) + s.phase) -
                         std::cos(w * (hi - seg.t_begin) + s.phase));
                   return v;
                 }},
      seg.law);
}

bool is_stopped(const Segment& seg) {
  return std::visit(overloaded{[](const ConstantScale& c) { return c.scale == 0.0; },
                               [](const Sinusoid& s) {
                                 return s.base == 0.0 && s.amplitude == 0.0;
                               }},
                    seg.law);
}

void check_finite(const Segment& seg, std::size_t i) {
  const std::string key = "schedule.segments[" + std::to_string(i) + "]";
  if (!std::isfinite(seg.t_begin)) throw ValidationError("segment start must be finite", key);
  if (!(seg.t_end > seg.t_begin)) throw ValidationError("segment must have positive length", key);
  std::visit(overloaded{[&](const ConstantScale& c) {
                          if (!std::isfinite(c.scale))
                            throw ValidationError("scale must be finite", key);
                        },
                        [&](const Sinusoid& s) {
                          if (!std::isfinite(s.base) || !std::isfinite(s.amplitude) ||
                              !std::isfinite(s.angular_freq) || !std::isfinite(s.phase))
                            throw ValidationError("sinusoid parameters must be finite", key);
                        }},
             seg.law);
}

}  // namespace

VelocitySchedule::VelocitySchedule(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    check_finite(segments_[i], i);
    if (i > 0 && segments_[i].t_begin < segments_[i - 1].t_end)
      throw ValidationError("segments must be sorted and non-overlapping",
                            "schedule.segments[" + std::to_string(i) + "]");
  }
}

bool VelocitySchedule::is_static() const {
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& s) {
    const auto* c = std::get_if<ConstantScale>(&s.law);
    return c != nullptr && c->scale == 1.0;
  });
}

double VelocitySchedule::scale_at(double t) const {
  for (const auto& seg : segments_) {
    if (t < seg.t_begin) break;
    if (t < seg.t_end) return law_value(seg, t);
  }
  return 1.0;
}

double VelocitySchedule::integrated_scale(double t) const {
  double excess = 0.0;
  if (t >= 0.0) {
    for (const auto& seg : segments_) excess += excess_integral(seg, 0.0, t);
    return t + excess;
  }
  for (const auto& seg : segments_) excess += excess_integral(seg, t, 0.0);
  return t - excess;
}

double scale_at(const VelocitySchedule& schedule, double t) { return schedule.scale_at(t); }

double accumulated_phase(const VelocitySchedule& schedule, double beta_omega0, double t) {
  return beta_omega0 * schedule.integrated_scale(t);
}

std::vector<PredictedEcho> predict_echo_times(const VelocitySchedule& schedule,
                                              double beta_omega0, double t_in,
                                              double horizon) {
  if (!std::isfinite(horizon) || horizon <= 0.0)
    throw ValidationError("echo prediction horizon must be finite and positive");
  std::vector<PredictedEcho> out;
  if (beta_omega0 <= 0.0) return out;

  const double t_hi = t_in + horizon;
  std::vector<double> cuts{t_in, t_hi};
  for (const auto& seg : schedule.segments()) {
    for (double b : {seg.t_begin, seg.t_end})
      if (b > t_in && b < t_hi) cuts.push_back(b);
    // zeros of a sinusoidal law split it into monotone pieces of phi
    if (const auto* s = std::get_if<Sinusoid>(&seg.law);
        s != nullptr && s->amplitude != 0.0 && s->angular_freq != 0.0 &&
        std::abs(s->base / s->amplitude) <= 1.0) {
      const double lo = std::max(seg.t_begin, t_in);
      const double hi = std::min(seg.t_end, t_hi);
      if (!(hi > lo)) continue;
      const double w = s->angular_freq;
      const double x0 = std::asin(-s->base / s->amplitude);
      for (double root : {x0, units::kPi - x0}) {
        // t = t_begin + (root + 2 pi n - phase) / w
        const double na = ((lo - seg.t_begin) * w - root + s->phase) / units::kTwoPi;
        const double nb = ((hi - seg.t_begin) * w - root + s->phase) / units::kTwoPi;
        const auto n_first = static_cast<long long>(std::floor(std::min(na, nb))) - 1;
        const auto n_last = static_cast<long long>(std::ceil(std::max(na, nb))) + 1;
        for (long long n = n_first; n <= n_last; ++n) {
          const double t =
              seg.t_begin + (root + units::kTwoPi * static_cast<double>(n) - s->phase) / w;
          if (t > lo && t < hi) cuts.push_back(t);
        }
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double phi_in = accumulated_phase(schedule, beta_omega0, t_in);
  auto rel = [&](double t) { return accumulated_phase(schedule, beta_omega0, t) - phi_in; };
  auto aligned = [](double g) {
    return std::abs(std::remainder(g, units::kTwoPi)) < 1e-9 * std::max(1.0, std::abs(g));
  };
  const double t_tol = 1e-12 * std::max(horizon, std::abs(t_in));

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double mid = 0.5 * (a + b);
    const Segment* active = nullptr;
    for (const auto& seg : schedule.segments())
      if (mid >= seg.t_begin && mid < seg.t_end) active = &seg;

    const double ga = rel(a);
    const double gb = rel(b);
    if (active != nullptr && is_stopped(*active)) {
      if (aligned(ga)) {
        // continuum of alignment: report the resumption instead
        std::erase_if(out, [&](const PredictedEcho& e) { return std::abs(e.time - a) <= t_tol; });
        if (b < t_hi || std::abs(b - t_hi) <= t_tol) out.push_back({b, true});
      }
      continue;
    }
    if (ga == gb) continue;
    const bool rising = gb > ga;
    const double eps = 1e-12 * std::max({1.0, std::abs(ga), std::abs(gb)});
    const double g_lo = std::min(ga, gb);
    const double g_hi = std::max(ga, gb);
    const auto k_first = static_cast<long long>(std::floor(g_lo / units::kTwoPi)) - 1;
    const auto k_last = static_cast<long long>(std::ceil(g_hi / units::kTwoPi)) + 1;
    for (long long k = k_first; k <= k_last; ++k) {
      const double level = units::kTwoPi * static_cast<double>(k);
      // the piece start is excluded; it belongs to the previous piece
      const bool inside = rising ? (level > ga + eps && level <= gb + eps)
                                 : (level < ga - eps && level >= gb - eps);
      if (!inside) continue;
      double t;
      if (active == nullptr || std::holds_alternative<ConstantScale>(active->law)) {
        t = a + (level - ga) / (gb - ga) * (b - a);
      } else {
        double lo = a, hi = b;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
          const double m = 0.5 * (lo + hi);
          if ((rel(m) < level) == rising) lo = m;
          else hi = m;
        }
        t = 0.5 * (lo + hi);
      }
      out.push_back({std::min(t, b), false});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PredictedEcho& x, const PredictedEcho& y) { return x.time < y.time; });
  out.erase(std::unique(out.begin(), out.end(),
                        [&](const PredictedEcho& x, const PredictedEcho& y) {
                          return std::abs(x.time - y.time) <= t_tol;
                        }),
            out.end());
  return out;
}

VelocitySchedule make_gfc() { return VelocitySchedule{}; }

VelocitySchedule make_sgem(double t_switch) {
  return VelocitySchedule({{t_switch, kForever, ConstantScale{-1.0}}});
}

VelocitySchedule make_hold(double t_stop, double duration) {
  return VelocitySchedule({{t_stop, t_stop + duration, ConstantScale{0.0}}});
}

VelocitySchedule make_boost(double t_begin, double t_end, double scale) {
  return VelocitySchedule({{t_begin, t_end, ConstantScale{scale}}});
}

VelocitySchedule make_sine(double t_begin, double t_end, double amplitude,
                           double angular_freq, double phase, double base) {
  return VelocitySchedule({{t_begin, t_end, Sinusoid{base, amplitude, angular_freq, phase}}});
}

VelocitySchedule compose(const VelocitySchedule& a, const VelocitySchedule& b) {
  std::vector<Segment> all = a.segments();
  all.insert(all.end(), b.segments().begin(), b.segments().end());
  std::stable_sort(all.begin(), all.end(),
                   [](const Segment& x, const Segment& y) { return x.t_begin < y.t_begin; });
  return VelocitySchedule(std::move(all));
}

double boost_scale_for_phase(double delta_phi, double beta_omega0, double t_begin,
                             double t_end) {
  if (!(t_end > t_begin) || !(beta_omega0 > 0.0))
    throw ValidationError("boost window and tooth spacing must be positive");
  return 1.0 + delta_phi / (beta_omega0 * (t_end - t_begin));
}

double boost_echo_time(double t_in, double t_f, double delta_phi, double t0) {
  const double cycles = delta_phi / units::kTwoPi;
  const double p = std::ceil((t_f - t_in) / t0 + cycles);
  return t_in + (p - cycles) * t0;
}

std::optional<std::string> sgem_window_warning(double t_sw, double delta_t, double t0) {
  if (t_sw > 0.5 * delta_t && t_sw < t0 - 0.5 * delta_t) return std::nullopt;
  std::ostringstream msg;
  msg << "switch time " << units::to_ns(t_sw) << " ns is outside ("
      << units::to_ns(0.5 * delta_t) << ", " << units::to_ns(t0 - 0.5 * delta_t)
      << ") ns; the SGEM echo may not be the first retrieval";
  return msg.str();
}

}  // namespace dfc
