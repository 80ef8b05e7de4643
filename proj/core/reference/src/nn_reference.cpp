#include <stdexcept>

#include "wasnem/reference/kernels.hpp"
#include "wasnem/reference/tally.hpp"

namespace wasnem::reference {
namespace {

// Odometer over a multi-index with the given extents; false once wrapped.
bool next_index(std::vector<std::uint64_t>& idx, const std::vector<std::uint64_t>& extent) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < extent[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// Input value under window position `out` and offset `off`; zero in the padding.
double padded_value(std::span<const double> input, const WindowGeometry& g,
                    const std::vector<std::uint64_t>& out, const std::vector<std::uint64_t>& off) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto pos = static_cast<std::int64_t>(out[k] * g.strides[k] + off[k]) -
                     static_cast<std::int64_t>(g.padding[k]);
    if (pos < 0 || pos >= static_cast<std::int64_t>(g.input_dims[k])) return 0.0;
    flat = flat * g.input_dims[k] + static_cast<std::size_t>(pos);
  }
  return input[flat];
}

}  // namespace

Traced<RealVec> fully_connected(std::span<const double> input, std::span<const double> weights,
                                std::span<const double> bias) {
  const std::size_t n_in = input.size();
  const std::size_t n_out = bias.size();
  if (weights.size() != n_in * n_out) throw std::invalid_argument("weight shape mismatch");
  Tally t;
  RealVec out(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    // bias as a weight on a constant 1 input
    double acc = t.mac(0.0, bias[j], 1.0);
    for (std::size_t i = 0; i < n_in; ++i) acc = t.mac(acc, weights[j * n_in + i], input[i]);
    out[j] = acc;
  }
  return {std::move(out), t.counts()};
}

Traced<RealVec> activation(ActivationKind kind, std::span<const double> input) {
  Tally t;
  RealVec out(input.size());
  switch (kind) {
    case ActivationKind::relu:
      for (std::size_t i = 0; i < input.size(); ++i) out[i] = t.max(0.0, input[i]);
      break;
    case ActivationKind::logistic:
      for (std::size_t i = 0; i < input.size(); ++i) {
        out[i] = t.div(1.0, t.add(1.0, t.exp(-input[i])));
      }
      break;
    case ActivationKind::tanh:
      for (std::size_t i = 0; i < input.size(); ++i) {
        const double e = t.exp(-2.0 * input[i]);
        out[i] = t.div(t.sub(1.0, e), t.add(1.0, e));
      }
      break;
    case ActivationKind::softmax: {
      double sum = 0.0;
      for (std::size_t i = 0; i < input.size(); ++i) {
        out[i] = t.exp(input[i]);
        sum = t.add(sum, out[i]);
      }
      for (double& v : out) v = t.div(v, sum);
      break;
    }
  }
  return {std::move(out), t.counts()};
}

Traced<RealVec> convolution(std::span<const double> input, const ConvLayer& layer,
                            std::span<const double> kernels, std::span<const double> bias) {
  const auto& g = layer.geometry;
  const auto out_dims = conv_output_dims(g);
  const std::uint64_t taps = product(g.template_dims);
  if (input.size() != product(g.input_dims)) throw std::invalid_argument("input shape mismatch");
  if (kernels.size() != layer.n_templates * taps || bias.size() != layer.n_templates) {
    throw std::invalid_argument("kernel shape mismatch");
  }

  Tally t;
  RealVec out;
  out.reserve(layer.n_templates * product(out_dims));
  for (std::uint64_t tpl = 0; tpl < layer.n_templates; ++tpl) {
    std::vector<std::uint64_t> o(out_dims.size(), 0);
    do {
      double acc = t.mac(0.0, bias[tpl], 1.0);
      std::vector<std::uint64_t> off(out_dims.size(), 0);
      std::size_t tap = 0;
      do {
        acc = t.mac(acc, kernels[tpl * taps + tap++], padded_value(input, g, o, off));
      } while (next_index(off, g.template_dims));
      out.push_back(acc);
    } while (next_index(o, out_dims));
  }
  return {std::move(out), t.counts()};
}

Traced<RealVec> pooling(std::span<const double> input, const PoolLayer& layer) {
  const auto& g = layer.geometry;
  const auto out_dims = conv_output_dims(g);
  const double taps = static_cast<double>(product(g.template_dims));
  if (input.size() != product(g.input_dims)) throw std::invalid_argument("input shape mismatch");

  Tally t;
  RealVec out;
  out.reserve(product(out_dims));
  std::vector<std::uint64_t> o(out_dims.size(), 0);
  do {
    std::vector<std::uint64_t> off(out_dims.size(), 0);
    double acc = padded_value(input, g, o, off);
    while (next_index(off, g.template_dims)) {
      const double v = padded_value(input, g, o, off);
      acc = layer.mode == PoolMode::max ? t.max(acc, v) : t.add(acc, v);
    }
    if (layer.mode == PoolMode::avg && layer.charge_avg_pool_div) acc = t.div(acc, taps);
    out.push_back(acc);
  } while (next_index(o, out_dims));
  return {std::move(out), t.counts()};
}

Traced<RealVec> batch_norm(std::span<const double> input, std::span<const double> scale,
                           std::span<const double> shift) {
  if (scale.size() != input.size() || shift.size() != input.size()) {
    throw std::invalid_argument("batch norm parameter shape mismatch");
  }
  Tally t;
  RealVec out(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) out[i] = t.add(t.mul(input[i], scale[i]), shift[i]);
  return {std::move(out), t.counts()};
}

}  // namespace wasnem::reference
