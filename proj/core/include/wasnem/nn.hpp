#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wasnem/dsp.hpp"
#include "wasnem/hwcost.hpp"

// Cost models of neural-network inference layers.

namespace wasnem {

enum class ActivationKind { relu, logistic, tanh, softmax };
enum class PoolMode { max, avg };

std::string_view to_string(ActivationKind kind);
std::string_view to_string(PoolMode mode);

struct FcLayer {
  std::uint64_t n_in = 1;       // L_i
  std::uint64_t n_neurons = 1;  // L_n
  friend bool operator==(const FcLayer&, const FcLayer&) = default;
};

// Sliding-template geometry shared by convolution and pooling; one entry per
// data axis.
struct WindowGeometry {
  std::vector<std::uint64_t> input_dims;     // L_i,k
  std::vector<std::uint64_t> template_dims;  // T_d,k
  std::vector<std::uint64_t> strides;        // T_s,k
  std::vector<std::uint64_t> padding;        // T_p,k
  friend bool operator==(const WindowGeometry&, const WindowGeometry&) = default;
};

struct ConvLayer {
  std::uint64_t n_templates = 1;  // T_n
  WindowGeometry geometry;
  friend bool operator==(const ConvLayer&, const ConvLayer&) = default;
};

struct PoolLayer {
  PoolMode mode = PoolMode::max;
  WindowGeometry geometry;
  // Average pooling divides once per output; the combining-op formula alone
  // does not count it.
  bool charge_avg_pool_div = true;
  friend bool operator==(const PoolLayer&, const PoolLayer&) = default;
};

// L_o,k = (L_i,k - T_d,k + 2 T_p,k) / T_s,k + 1 per axis. Throws DomainError
// naming the axis when the division is not exact or the geometry is invalid.
std::vector<std::uint64_t> conv_output_dims(const WindowGeometry& g);

std::uint64_t product(const std::vector<std::uint64_t>& dims);

CostReport cost_fc(const FcLayer& layer, unsigned word_bits = 32,
                   const std::string& level = kDefaultMemoryLevel);
CostReport cost_activation(ActivationKind kind, std::uint64_t n,
                           const std::string& level = kDefaultMemoryLevel,
                           unsigned word_bits = 32);
CostReport cost_conv(const ConvLayer& layer, unsigned word_bits = 32,
                     const std::string& level = kDefaultMemoryLevel);
CostReport cost_pool(const PoolLayer& layer, unsigned word_bits = 32,
                     const std::string& level = kDefaultMemoryLevel);
CostReport cost_batchnorm(std::uint64_t n, unsigned word_bits = 32,
                          const std::string& level = kDefaultMemoryLevel);

}  // namespace wasnem
