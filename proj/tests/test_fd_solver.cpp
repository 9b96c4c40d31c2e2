// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dfcomb/errors.hpp"
#include "dfcomb/fd_solver.hpp"
#include "dfcomb/metrics.hpp"
#include "dfcomb/td_solver.hpp"
#include "dfcomb/units.hpp"
#include "support.hpp"

using namespace dfc;
using test::rel_l2;
using units::ns;

namespace {

CombConfig fig2a_comb() { return test::bundled("fig2a").comb; }

CombConfig with_targets(int m) {
  CombConfig c = fig2a_comb();
  c.m_targets = m;
  return c;
}

/// Largest |Im E| / max |E| over the waveform.
double imaginary_fraction(const Waveform& w) {
  double im = 0.0, peak = 0.0;
  for (const auto& s : w.samples) {
    im = std::max(im, std::abs(s.imag()));
    peak = std::max(peak, std::abs(s));
  }
  return im / peak;
}

}  // namespace

TEST_SUITE("fd_solver") {

TEST_CASE("no coupling gives unit transfer and an unchanged pulse") {
  CombConfig c = fig2a_comb();
  c.zeta0 = 0.0;
  const auto omega = linear_omega_grid(-6e8, 6e8, 101);
  for (const auto& t : exact_transfer(c, omega).values) CHECK(t == cplx{1.0, 0.0});
  for (const auto& t : approx_transfer_product(c, omega).values) CHECK(t == cplx{1.0, 0.0});
  const Scenario sc = test::bundled("fig2a");
  const Waveform in = build_pulse(sc.pulse, sc.grid);
  CHECK(rel_l2(propagate_static(c, in), in) < 1e-12);
}

TEST_CASE("single resonant target transmits exp(-zeta0/2) at line centre") {
  CombConfig c = with_targets(1);
  const cplx t = exact_transfer_at(c, 0.0);
  CHECK(std::abs(t) == doctest::Approx(std::exp(-41.3 / 2.0)).epsilon(1e-12).scale(0.0));
  // exp(-20.65) = 1.076e-9; the commonly quoted 1.09e-9 is 1.3% high
  CHECK(std::abs(t) == doctest::Approx(1.09e-9).epsilon(0.015).scale(0.0));
  CHECK(std::abs(t.imag()) < 1e-20);
}

TEST_CASE("transfer is passive and tends to one far from the comb") {
  const CombConfig c = fig2a_comb();
  const auto omega = linear_omega_grid(-3e9, 3e9, 30001);
  for (const auto& t : exact_transfer(c, omega).values) CHECK(std::abs(t) <= 1.0);
  CHECK(std::abs(exact_transfer_at(c, 1e13) - 1.0) < 1e-4);
}

TEST_CASE("fig2a transfer shows five dips spaced by the tooth spacing") {
  const CombConfig c = fig2a_comb();
  const DerivedComb d = derive_comb(c);
  const auto omega = linear_omega_grid(-4.0 * d.beta_omega0, 4.0 * d.beta_omega0, 80001);
  const auto tf = exact_transfer(c, omega);
  std::vector<double> dips;
  for (std::size_t i = 1; i + 1 < omega.size(); ++i) {
    const double m = std::abs(tf.values[i]);
    if (m < std::abs(tf.values[i - 1]) && m <= std::abs(tf.values[i + 1]) && m < 0.1)
      dips.push_back(omega[i]);
  }
  REQUIRE(dips.size() == 5);
  for (std::size_t k = 1; k < dips.size(); ++k) {
    const double spacing = dips[k] - dips[k - 1];
    CHECK(spacing * d.t0 == doctest::Approx(units::kTwoPi).epsilon(1e-3).scale(0.0));
  }
}

TEST_CASE("interior teeth repeat with period beta omega0") {
  // Measured with an independent numpy evaluation: 0.039 for M = 41 and
  // 0.016 for M = 101 over the central half; moduli agree to 4e-5.
  auto worst = [](int m) {
    const CombConfig c = with_targets(m);
    const double b = derive_comb(c).beta_omega0;
    const double half = (m - 1) / 4.0 * b;
    double complex_dev = 0.0, modulus_dev = 0.0;
    for (double w : linear_omega_grid(-half, half, 4001)) {
      const cplx t0 = exact_transfer_at(c, w), t1 = exact_transfer_at(c, w + b);
      complex_dev = std::max(complex_dev, std::abs(t0 - t1));
      modulus_dev = std::max(modulus_dev, std::abs(std::abs(t0) - std::abs(t1)));
    }
    return std::pair{complex_dev, modulus_dev};
  };
  const auto [c41, m41] = worst(41);
  const auto [c101, m101] = worst(101);
  CHECK(c41 < 0.05);
  CHECK(m41 < 1e-4);
  CHECK(c101 < c41);
  CHECK(m101 < m41);
}

TEST_CASE("product form matches the exact cascade in modulus over the comb band") {
  // The product form is the infinite-comb limit. Its modulus agrees with a
  // finite comb; its phase lacks the reactive tail of the absent teeth.
  const CombConfig c = fig2a_comb();
  const DerivedComb d = derive_comb(c);
  const double half = (c.m_targets - 2) * d.beta_omega0 / 2.0;
  const auto omega = linear_omega_grid(-half, half, 3001);
  const auto exact = exact_transfer(c, omega);
  const auto approx = approx_transfer_product(c, omega);
  double modulus_dev = 0.0, completed_dev = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    modulus_dev = std::max(modulus_dev, std::abs(std::abs(approx.values[i]) - std::abs(exact.values[i])));
    // add the missing teeth |m| > 2 out to a converged cutoff
    cplx tail{};
    for (int m = 3; m <= 20000; ++m) {
      for (int s : {-1, 1}) tail += d.coupling / cplx(0.0, s * m * d.beta_omega0 - omega[i]);
    }
    completed_dev = std::max(completed_dev, std::abs(approx.values[i] - exact.values[i] * std::exp(-tail)));
  }
  CHECK(modulus_dev < 0.05);
  CHECK(completed_dev < 0.05);
  CHECK_FALSE(product_form_questionable(c));
  CombConfig low = c;
  low.delta_v = delta_v_for_spacing(c.transition, 2.0 * 2.0 * c.transition.gamma);
  CHECK(product_form_questionable(low));
}

TEST_CASE("first-order product form gives the leakage plus one echo") {
  // exp(-pi z/4) (1 - (pi z/2) q e^{i w T0}) to first order in z
  CombConfig c = fig2a_comb();
  c.zeta0 = 1e-4 * derive_comb(c).finesse;
  const DerivedComb d = derive_comb(c);
  const double z = *d.zeta_eff0;
  const auto omega = linear_omega_grid(-5e8, 5e8, 101);
  const auto approx = approx_transfer_product(c, omega, 1);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const cplx two_terms = std::exp(-units::kPi * z / 4.0) *
        (1.0 - 0.5 * units::kPi * z * std::exp(-units::kPi / d.finesse) *
                   std::polar(1.0, omega[i] * d.t0));
    CHECK(std::abs(approx.values[i] - two_terms) < 1e-7);
  }
}

TEST_CASE("spectral propagation agrees with the time-domain solver") {
  for (const char* name : {"fig2a", "equal-split", "fig4a"}) {
    CAPTURE(name);
    const Scenario sc = test::bundled(name);
    const Waveform in = build_pulse(sc.pulse, sc.grid);
    const Waveform td = simulate(sc.comb, sc.schedule, in, sc.solver).output;
    const Waveform fd = propagate_static(sc.comb, in);
    CHECK(rel_l2(td, fd) < 1e-3);
  }
}

TEST_CASE("fig2a spectral first-echo efficiency is about 0.45") {
  const Scenario sc = test::bundled("fig2a");
  const Waveform in = build_pulse(sc.pulse, sc.grid);
  const Waveform out = propagate_static(sc.comb, in);
  CHECK(efficiency(in, out, sc.t_in(), *sc.t_ec) == doctest::Approx(0.45).epsilon(0.02 / 0.45).scale(0.0));
}

TEST_CASE("real input through a symmetric comb stays real") {
  const Scenario sc = test::bundled("fig2a");
  const Waveform in = build_pulse(sc.pulse, sc.grid);
  CHECK(imaginary_fraction(propagate_static(sc.comb, in)) < 1e-6);
  CHECK(imaginary_fraction(simulate(sc.comb, sc.schedule, in, sc.solver).output) < 1e-6);
}

TEST_CASE("a ringing tail longer than any allowed transform raises a padding error") {
  CombConfig c = fig2a_comb();
  c.transition.gamma = 1.0;  // 5 s of ringing on a 0.14 ns grid
  const Scenario sc = test::bundled("fig2a");
  const Waveform in = build_pulse(sc.pulse, sc.grid);
  try {
    propagate_static(c, in);
    FAIL("expected a padding error");
  } catch (const PaddingError& e) {
    CHECK(e.required_length() > (std::size_t{1} << 26));
  }
}

TEST_CASE("transfer CSV has a header and full precision") {
  const CombConfig c = fig2a_comb();
  const auto omega = linear_omega_grid(-1e8, 1e8, 3);
  std::ostringstream os;
  write_transfer_csv(os, exact_transfer(c, omega));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "omega_rad_s,re,im");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
  CHECK(os.str().find("-100000000,") != std::string::npos);
}

}  // TEST_SUITE
