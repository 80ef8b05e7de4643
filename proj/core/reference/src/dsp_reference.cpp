#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wasnem/reference/kernels.hpp"
#include "wasnem/reference/tally.hpp"

namespace wasnem::reference {
namespace {

constexpr double kPi = std::numbers::pi;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::size_t bit_reverse(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1u);
    x >>= 1;
  }
  return r;
}

}  // namespace

Traced<RealVec> window_frame(std::span<const double> frame) {
  Tally t;
  const std::size_t n = frame.size();
  RealVec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = n > 1 ? 0.54 - 0.46 * std::cos(2.0 * kPi * i / (n - 1)) : 1.0;
    out[i] = t.mac(0.0, frame[i], w);
  }
  return {std::move(out), t.counts()};
}

Traced<ComplexVec> fft_radix2(std::span<const double> frame, std::size_t n_fft) {
  if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0) throw std::invalid_argument("n_fft must be 2^k");
  if (frame.size() > n_fft) throw std::invalid_argument("frame longer than the FFT");
  unsigned bits = 0;
  while ((std::size_t{1} << bits) < n_fft) ++bits;

  ComplexVec x(n_fft);
  for (std::size_t i = 0; i < frame.size(); ++i) x[bit_reverse(i, bits)] = frame[i];

  Tally t;
  for (std::size_t len = 2; len <= n_fft; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n_fft; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::complex<double> w = std::polar(1.0, -2.0 * kPi * static_cast<double>(j) / len);
        const auto top = x[start + j];
        const auto prod = t.cmul(w, x[start + j + half]);
        x[start + j] = t.cadd(top, prod);
        x[start + j + half] = t.csub(top, prod);
      }
    }
  }
  return {std::move(x), t.counts()};
}

RealVec power_bins(const ComplexVec& spectrum) {
  RealVec p(spectrum.size() / 2);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(spectrum[k]);
  return p;
}

Traced<RealVec> log_mel(std::span<const double> power_bins, std::size_t n_mel, double f_s) {
  const std::size_t n_bins = power_bins.size();
  const double bin_hz = f_s / 2.0 / static_cast<double>(n_bins);
  const double top = hz_to_mel(f_s / 2.0);
  std::vector<double> edges(n_mel + 2);
  for (std::size_t m = 0; m < edges.size(); ++m) {
    edges[m] = mel_to_hz(top * static_cast<double>(m) / static_cast<double>(n_mel + 1));
  }

  Tally t;
  RealVec out(n_mel);
  for (std::size_t m = 0; m < n_mel; ++m) {
    double acc = 0.0;
    // dense: every bin is weighted, most weights are zero
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = bin_hz * static_cast<double>(k);
      double w = 0.0;
      if (f > edges[m] && f <= edges[m + 1]) {
        w = (f - edges[m]) / (edges[m + 1] - edges[m]);
      } else if (f > edges[m + 1] && f < edges[m + 2]) {
        w = (edges[m + 2] - f) / (edges[m + 2] - edges[m + 1]);
      }
      acc = t.mac(acc, w, power_bins[k]);
    }
    out[m] = t.log(acc + 1e-30);
  }
  return {std::move(out), t.counts()};
}

Traced<RealVec> dct(std::span<const double> log_mel, std::size_t n_cep) {
  const std::size_t n = log_mel.size();
  Tally t;
  RealVec out(n_cep);
  for (std::size_t k = 0; k < n_cep; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double basis = std::cos(kPi * static_cast<double>(k) * (m + 0.5) / static_cast<double>(n));
      acc = t.mac(acc, basis, log_mel[m]);
    }
    out[k] = acc;
  }
  return {std::move(out), t.counts()};
}

Traced<RealVec> mfcc_frame(std::span<const double> frame, std::size_t n_fft, std::size_t n_mel,
                           std::size_t n_cep, double f_s) {
  auto windowed = window_frame(frame);
  auto spectrum = fft_radix2(windowed.value, n_fft);
  auto mel = log_mel(power_bins(spectrum.value), n_mel, f_s);
  auto cep = dct(mel.value, n_cep);
  OpCounts ops = windowed.ops;
  ops += spectrum.ops;
  ops += mel.ops;
  ops += cep.ops;
  return {std::move(cep.value), ops};
}

}  // namespace wasnem::reference
