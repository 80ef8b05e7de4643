#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wasnem/nn.hpp"
#include "wasnem/ops.hpp"

// Straightforward implementations of the MFCC front end and the network
// layers. Each returns its output together with the operations it executed.

namespace wasnem::reference {

template <class T>
struct Traced {
  T value;
  OpCounts ops;
};

using RealVec = std::vector<double>;
using ComplexVec = std::vector<std::complex<double>>;

// Hamming-windowed frame.
Traced<RealVec> window_frame(std::span<const double> frame);

// Iterative radix-2 decimation-in-time FFT of a zero-padded real frame.
Traced<ComplexVec> fft_radix2(std::span<const double> frame, std::size_t n_fft);

// Log energies of a dense triangular mel filterbank applied to the first
// n_fft/2 power-spectrum bins.
Traced<RealVec> log_mel(std::span<const double> power_bins, std::size_t n_mel, double f_s);

// DCT-II of the log-mel energies, first n_cep coefficients.
Traced<RealVec> dct(std::span<const double> log_mel, std::size_t n_cep);

// Dense layer; weights row-major [n_neurons][n_in], one bias per neuron.
Traced<RealVec> fully_connected(std::span<const double> input, std::span<const double> weights,
                                std::span<const double> bias);

Traced<RealVec> activation(ActivationKind kind, std::span<const double> input);

// N-d convolution with zero padding. `kernels` holds n_templates row-major
// kernels of shape template_dims; one bias per template. Output is
// [n_templates][output dims...].
Traced<RealVec> convolution(std::span<const double> input, const ConvLayer& layer,
                            std::span<const double> kernels, std::span<const double> bias);

// N-d pooling with zero padding.
Traced<RealVec> pooling(std::span<const double> input, const PoolLayer& layer);

// Folded inference batch norm: x * scale + shift.
Traced<RealVec> batch_norm(std::span<const double> input, std::span<const double> scale,
                           std::span<const double> shift);

// Power spectrum |X_k|^2 of the first n/2 bins (not instrumented).
RealVec power_bins(const ComplexVec& spectrum);

// Full per-frame MFCC chain; ops summed over the four stages.
Traced<RealVec> mfcc_frame(std::span<const double> frame, std::size_t n_fft, std::size_t n_mel,
                           std::size_t n_cep, double f_s);

}  // namespace wasnem::reference
