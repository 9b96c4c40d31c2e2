// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

// SI is used everywhere inside the library. The factors below convert the
// laboratory units used in scenario files (ns, mm/s, MHz, keV) at parse time.
namespace dfc::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kJoulePerKev = 1.0e3 * kElementaryCharge;

inline constexpr double kNanosecond = 1.0e-9;
inline constexpr double kMicrosecond = 1.0e-6;
inline constexpr double kMillimetrePerSecond = 1.0e-3;
inline constexpr double kMegahertz = 1.0e6;

constexpr double ns(double value) { return value * kNanosecond; }
constexpr double to_ns(double seconds) { return seconds / kNanosecond; }
constexpr double mm_per_s(double value) { return value * kMillimetrePerSecond; }
constexpr double to_mm_per_s(double v) { return v / kMillimetrePerSecond; }

/// Angular rate (rad/s) from a cyclic frequency given in MHz.
constexpr double angular_from_mhz(double mhz) { return kTwoPi * mhz * kMegahertz; }
constexpr double mhz_from_angular(double rad_s) { return rad_s / (kTwoPi * kMegahertz); }

}  // namespace dfc::units
