#include "wasnem/pipeline.hpp"

#include "wasnem/errors.hpp"

namespace wasnem {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

std::string_view block_kind_name(const BlockSpec& spec) {
  return std::visit(overloaded{
                        [](const FramingWindowBlock&) { return std::string_view("framing_window"); },
                        [](const FftBlock&) { return std::string_view("fft"); },
                        [](const LogMelBlock&) { return std::string_view("log_mel"); },
                        [](const DctBlock&) { return std::string_view("dct"); },
                        [](const FcLayer&) { return std::string_view("fc"); },
                        [](const ActivationLayer&) { return std::string_view("activation"); },
                        [](const ConvLayer&) { return std::string_view("conv"); },
                        [](const PoolLayer&) { return std::string_view("pool"); },
                        [](const BatchNormLayer&) { return std::string_view("batchnorm"); },
                    },
                    spec);
}

bool is_dsp_block(const BlockSpec& spec) { return spec.index() <= 3; }

PipelinePlan mfcc_plan() {
  PipelinePlan plan;
  plan.blocks = {{FramingWindowBlock{}, {}, {}},
                 {FftBlock{}, {}, {}},
                 {LogMelBlock{}, {}, {}},
                 {DctBlock{}, {}, {}}};
  return plan;
}

namespace {

struct BlockShape {
  std::optional<std::uint64_t> expected_input;  // empty: accepts anything
  std::uint64_t output;
  CostReport report;
};

}  // namespace

PipelineCost cost_pipeline(const PipelinePlan& plan, Second delta, Hertz f_s,
                           const ProcessingProfile& profile) {
  PipelineCost result;
  if (plan.blocks.empty()) return result;

  MfccConfig cfg = plan.mfcc.value_or(MfccConfig::for_sample_rate(f_s, profile.word_size_bits));
  cfg.word_size_bits = profile.word_size_bits;
  const unsigned S = profile.word_size_bits;

  bool has_dsp = false;
  for (const auto& b : plan.blocks) has_dsp = has_dsp || is_dsp_block(b.spec);
  if (has_dsp) {
    try {
      validate(cfg);
    } catch (const DomainError& e) {
      throw ConfigError("processing", "pipeline.mfcc", e.what());
    }
  }

  std::optional<std::uint64_t> frames;
  auto frame_count = [&](const std::string& field) {
    if (!frames) {
      try {
        frames = frames_per_window(delta, f_s, cfg);
      } catch (const DomainError& e) {
        throw ConfigError("processing", field, e.what());
      }
    }
    return *frames;
  };

  std::optional<std::uint64_t> width;  // output width of the previous block
  std::optional<BlockScope> prev_scope;

  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    const PipelineBlock& block = plan.blocks[i];
    const std::string field = "pipeline.blocks." + std::to_string(i);
    const std::string who = field + " (" + std::string(block_kind_name(block.spec)) + ")";
    auto fail = [&](const std::string& msg) -> void { throw ConfigError("processing", field, who + ": " + msg); };

    const std::string level =
        block.memory_level.empty() ? profile.memory_levels.front().name : block.memory_level;
    if (profile.find_level(level) == nullptr) fail("unknown memory level '" + level + "'");

    BlockScope scope;
    if (is_dsp_block(block.spec)) {
      if (block.scope == BlockScope::window) fail("DSP blocks always run per frame");
      scope = BlockScope::frame;
    } else {
      scope = block.scope.value_or(prev_scope == BlockScope::frame ? BlockScope::frame
                                                                   : BlockScope::window);
    }
    if (scope == BlockScope::frame && prev_scope == BlockScope::window) {
      fail("a per-frame block cannot follow a per-window block");
    }

    // Values available to this block per run.
    std::optional<std::uint64_t> input = width;
    if (input && scope == BlockScope::window && prev_scope == BlockScope::frame) {
      *input *= frame_count(field);
    }

    auto infer_size = [&](const std::optional<std::uint64_t>& n) -> std::uint64_t {
      if (n) return *n;
      if (!input) fail("size 'n' is required when the block has no predecessor");
      return *input;
    };

    BlockShape shape = std::visit(
        overloaded{
            [&](const FramingWindowBlock&) -> BlockShape {
              if (width) fail("framing_window must be the first block");
              return {std::nullopt, cfg.frame_len_samples, cost_framing_window(cfg, level)};
            },
            [&](const FftBlock&) -> BlockShape {
              return {cfg.frame_len_samples, cfg.fft_len / 2, cost_fft(cfg, level)};
            },
            [&](const LogMelBlock&) -> BlockShape {
              return {cfg.fft_len / 2, cfg.n_mel_bands, cost_log_mel(cfg, level)};
            },
            [&](const DctBlock&) -> BlockShape {
              return {cfg.n_mel_bands, cfg.n_cepstra, cost_dct(cfg, level)};
            },
            [&](const FcLayer& fc) -> BlockShape {
              return {fc.n_in, fc.n_neurons, cost_fc(fc, S, level)};
            },
            [&](const ActivationLayer& act) -> BlockShape {
              const auto n = infer_size(act.n);
              return {n, n, cost_activation(act.kind, n, level, S)};
            },
            [&](const ConvLayer& conv) -> BlockShape {
              try {
                const auto out = conv_output_dims(conv.geometry);
                return {product(conv.geometry.input_dims), conv.n_templates * product(out),
                        cost_conv(conv, S, level)};
              } catch (const DomainError& e) {
                fail(e.what());
              }
              return {};
            },
            [&](const PoolLayer& pool) -> BlockShape {
              try {
                const auto out = conv_output_dims(pool.geometry);
                return {product(pool.geometry.input_dims), product(out), cost_pool(pool, S, level)};
              } catch (const DomainError& e) {
                fail(e.what());
              }
              return {};
            },
            [&](const BatchNormLayer& bn) -> BlockShape {
              const auto n = infer_size(bn.n);
              return {n, n, cost_batchnorm(n, S, level)};
            },
        },
        block.spec);

    if (shape.expected_input && input && *shape.expected_input != *input) {
      fail("expects " + std::to_string(*shape.expected_input) + " inputs but the previous block "
           "produces " + std::to_string(*input));
    }

    CostReport report = scope == BlockScope::frame ? shape.report.repeated(frame_count(field))
                                                   : shape.report;
    result.total += report;
    result.blocks.push_back(std::move(report));
    width = shape.output;
    prev_scope = scope;
  }

  result.frames = frames.value_or(0);
  result.output_width = width.value_or(0);
  result.output_scope = prev_scope.value_or(BlockScope::window);
  const std::uint64_t runs = result.output_scope == BlockScope::frame ? result.frames : 1;
  result.output_bits = result.output_width * runs * S;
  return result;
}

}  // namespace wasnem
