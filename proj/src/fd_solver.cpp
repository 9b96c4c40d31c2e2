// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/fd_solver.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <ostream>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(len, data_.get(), data_.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, data_.get(), data_.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftBuffer() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(data_.get()); }
  std::size_t size() const { return n_; }
  /// sum_n x_n exp(-2 pi i k n / N)
  void forward() { fftw_execute(forward_); }
  /// sum_k X_k exp(+2 pi i k n / N)
  void backward() { fftw_execute(backward_); }

 private:
  std::size_t n_;
  std::unique_ptr<fftw_complex, FftwFree> data_;
  fftw_plan forward_{};
  fftw_plan backward_{};
};

constexpr std::size_t kMaxTransformLength = std::size_t{1} << 26;

}  // namespace

std::vector<double> linear_omega_grid(double lo, double hi, std::size_t n) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = lo;
    return w;
  }
  for (std::size_t i = 0; i < n; ++i)
    w[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return w;
}

namespace {

cplx transfer(const CombConfig& config, const DerivedComb& d, double omega) {
  const double gamma = config.transition.gamma;
  cplx exponent{};
  for (int k = 0; k < config.m_targets; ++k) {
    const double delta = config.index_of(k) * d.beta_omega0;
    exponent -= d.coupling / cplx(gamma, delta - omega);
  }
  return std::exp(exponent);
}

}  // namespace

cplx exact_transfer_at(const CombConfig& config, double omega) {
  return transfer(config, derive_comb(config), omega);
}

TransferFunction exact_transfer(const CombConfig& config, std::span<const double> omega) {
  TransferFunction tf;
  tf.omega.assign(omega.begin(), omega.end());
  const DerivedComb d = derive_comb(config);
  tf.values.reserve(omega.size());
  for (double w : omega) tf.values.push_back(transfer(config, d, w));
  return tf;
}

int default_product_terms(double finesse) {
  return std::max(1, static_cast<int>(std::ceil(5.0 * finesse / units::kPi)));
}

bool product_form_questionable(const CombConfig& config) {
  return derive_comb(config).finesse < 5.0;
}

TransferFunction approx_transfer_product(const CombConfig& config,
                                         std::span<const double> omega, int n_max) {
  const DerivedComb d = derive_comb(config);
  TransferFunction tf;
  tf.omega.assign(omega.begin(), omega.end());
  if (d.degenerate())
    throw ValidationError("the product form needs a non-degenerate comb", "comb.delta_v_mm_s");
  const double z = *d.zeta_eff0;
  const int terms = n_max > 0 ? n_max : default_product_terms(d.finesse);
  tf.values.reserve(omega.size());
  for (double w : omega) {
    cplx exponent{-0.25 * units::kPi * z, 0.0};
    for (int n = 1; n <= terms; ++n) {
      const double weight = 0.5 * units::kPi * z * std::exp(-units::kPi * n / d.finesse);
      exponent -= weight * std::polar(1.0, n * w * d.t0);
    }
    tf.values.push_back(std::exp(exponent));
  }
  return tf;
}

Waveform propagate_static(const CombConfig& config, const Waveform& input) {
  const DerivedComb d = derive_comb(config);
  Waveform out(input.grid());
  if (config.zeta0 == 0.0) {
    out.samples = input.samples;
    return out;
  }
  const std::size_t n = input.size();
  const double gamma = config.transition.gamma;
  const double tail_samples = std::ceil(5.0 / (gamma * input.dt));
  const double wanted = std::max(4.0 * static_cast<double>(n), static_cast<double>(n) + tail_samples);
  if (wanted > static_cast<double>(kMaxTransformLength)) {
    throw PaddingError("ringing tail needs a transform of " +
                           std::to_string(static_cast<unsigned long long>(wanted)) +
                           " samples, above the limit",
                       static_cast<std::size_t>(wanted));
  }
  std::size_t len = std::bit_ceil(static_cast<std::size_t>(wanted));

  const double total = input.energy();
  while (true) {
    FftBuffer buf(len);
    cplx* x = buf.data();
    std::fill(x, x + len, cplx{});
    std::copy(input.samples.begin(), input.samples.end(), x);
    buf.backward();
    const double dw = units::kTwoPi / (static_cast<double>(len) * input.dt);
    for (std::size_t k = 0; k < len; ++k) {
      const double kk = k < len / 2 ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(len);
      x[k] *= transfer(config, d, kk * dw) / static_cast<double>(len);
    }
    buf.forward();

    // Energy still ringing at the end of the buffer is what wraps around.
    const std::size_t tail = std::min(n, len / 8);
    double tail_energy = 0.0;
    for (std::size_t i = len - tail; i < len; ++i) tail_energy += std::norm(x[i]);
    tail_energy *= input.dt;
    if (total == 0.0 || tail_energy <= 1e-6 * total) {
      std::copy(x, x + n, out.samples.begin());
      return out;
    }
    if (len >= kMaxTransformLength)
      throw PaddingError("wrap-around energy above budget at the maximum transform length",
                         2 * len);
    len *= 2;
  }
}

void write_transfer_csv(std::ostream& os, const TransferFunction& tf) {
  os << "omega_rad_s,re,im\n";
  char line[128];
  for (std::size_t i = 0; i < tf.omega.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", tf.omega[i], tf.values[i].real(),
                  tf.values[i].imag());
    os << line;
  }
}

}  // namespace dfc
