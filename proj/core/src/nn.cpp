#include "wasnem/nn.hpp"

#include "wasnem/errors.hpp"

namespace wasnem {

std::string_view to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::relu: return "relu";
    case ActivationKind::logistic: return "logistic";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::softmax: return "softmax";
  }
  return "?";
}

std::string_view to_string(PoolMode mode) { return mode == PoolMode::avg ? "avg" : "max"; }

std::uint64_t product(const std::vector<std::uint64_t>& dims) {
  std::uint64_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

std::vector<std::uint64_t> conv_output_dims(const WindowGeometry& g) {
  const std::size_t axes = g.input_dims.size();
  if (axes == 0) throw DomainError("window geometry needs at least one axis");
  if (g.template_dims.size() != axes || g.strides.size() != axes || g.padding.size() != axes) {
    throw DomainError("window geometry: input_dims, template_dims, strides and padding must "
                      "have one entry per axis");
  }
  std::vector<std::uint64_t> out(axes);
  for (std::size_t k = 0; k < axes; ++k) {
    const std::string axis = "axis " + std::to_string(k);
    if (g.input_dims[k] == 0 || g.template_dims[k] == 0) {
      throw DomainError(axis + ": dimensions must be >= 1");
    }
    if (g.strides[k] == 0) throw DomainError(axis + ": stride must be >= 1");
    const std::uint64_t span = g.input_dims[k] + 2 * g.padding[k];
    if (g.template_dims[k] > span) {
      throw DomainError(axis + ": template larger than the padded input");
    }
    const std::uint64_t free = span - g.template_dims[k];
    if (free % g.strides[k] != 0) {
      throw DomainError(axis + ": (L_i - T_d + 2 T_p) = " + std::to_string(free) +
                        " is not divisible by stride " + std::to_string(g.strides[k]));
    }
    out[k] = free / g.strides[k] + 1;
  }
  return out;
}

namespace {

CostReport make_report(const char* label, const std::string& level, BitCount access_words,
                       BitCount stored_bits, unsigned word_bits) {
  CostReport r;
  r.label = label;
  if (access_words > 0) r.mem_accesses[level] = access_words * word_bits;
  if (stored_bits > 0) r.mem_stored[level] = stored_bits;
  return r;
}

}  // namespace

CostReport cost_fc(const FcLayer& layer, unsigned word_bits, const std::string& level) {
  const std::uint64_t li = layer.n_in;
  const std::uint64_t ln = layer.n_neurons;
  const std::uint64_t macs = ln * (li + 1);
  CostReport r = make_report("fc", level, 4 * macs, ln * (li + 2) * word_bits, word_bits);
  r.op_counts[OpClass::mac] = macs;
  return r;
}

CostReport cost_activation(ActivationKind kind, std::uint64_t n, const std::string& level,
                           unsigned word_bits) {
  CostReport r;
  switch (kind) {
    case ActivationKind::relu:
      r = make_report("relu", level, 3 * n, 0, word_bits);
      r.op_counts[OpClass::cmp] = n;
      break;
    case ActivationKind::tanh:
      r = make_report("tanh", level, 12 * n, 0, word_bits);
      r.op_counts[OpClass::add] = 2 * n;
      r.op_counts[OpClass::div] = n;
      r.op_counts[OpClass::exp] = n;
      break;
    case ActivationKind::logistic:
    case ActivationKind::softmax:
      r = make_report(kind == ActivationKind::softmax ? "softmax" : "logistic", level, 9 * n, 0,
                      word_bits);
      r.op_counts[OpClass::add] = n;
      r.op_counts[OpClass::div] = n;
      r.op_counts[OpClass::exp] = n;
      break;
  }
  return r;
}

CostReport cost_conv(const ConvLayer& layer, unsigned word_bits, const std::string& level) {
  const auto out_dims = conv_output_dims(layer.geometry);
  const std::uint64_t outputs = product(out_dims);
  const std::uint64_t taps = product(layer.geometry.template_dims) + 1;
  const std::uint64_t macs = layer.n_templates * outputs * taps;
  const BitCount stored = layer.n_templates * taps * word_bits + outputs * word_bits;
  CostReport r = make_report("conv", level, 4 * macs, stored, word_bits);
  r.op_counts[OpClass::mac] = macs;
  return r;
}

CostReport cost_pool(const PoolLayer& layer, unsigned word_bits, const std::string& level) {
  const auto out_dims = conv_output_dims(layer.geometry);
  const std::uint64_t outputs = product(out_dims);
  const std::uint64_t ops = outputs * (product(layer.geometry.template_dims) - 1);
  CostReport r = make_report(layer.mode == PoolMode::avg ? "avg_pool" : "max_pool", level,
                             3 * ops, outputs * word_bits, word_bits);
  if (layer.mode == PoolMode::max) {
    r.op_counts[OpClass::cmp] = ops;
  } else {
    r.op_counts[OpClass::add] = ops;
    if (layer.charge_avg_pool_div) r.op_counts[OpClass::div] = outputs;
  }
  return r;
}

CostReport cost_batchnorm(std::uint64_t n, unsigned word_bits, const std::string& level) {
  CostReport r = make_report("batchnorm", level, 6 * n, 2 * n * word_bits, word_bits);
  r.op_counts[OpClass::add] = n;
  r.op_counts[OpClass::mul] = n;
  return r;
}

}  // namespace wasnem
