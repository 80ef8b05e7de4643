#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wasnem/dsp.hpp"
#include "wasnem/hwcost.hpp"
#include "wasnem/nn.hpp"
#include "wasnem/params.hpp"

namespace wasnem {

struct FramingWindowBlock { friend bool operator==(const FramingWindowBlock&, const FramingWindowBlock&) = default; };
struct FftBlock { friend bool operator==(const FftBlock&, const FftBlock&) = default; };
struct LogMelBlock { friend bool operator==(const LogMelBlock&, const LogMelBlock&) = default; };
struct DctBlock { friend bool operator==(const DctBlock&, const DctBlock&) = default; };

struct ActivationLayer {
  ActivationKind kind = ActivationKind::relu;
  std::optional<std::uint64_t> n;  // inferred from the previous block when absent
  friend bool operator==(const ActivationLayer&, const ActivationLayer&) = default;
};

struct BatchNormLayer {
  std::optional<std::uint64_t> n;
  friend bool operator==(const BatchNormLayer&, const BatchNormLayer&) = default;
};

using BlockSpec = std::variant<FramingWindowBlock, FftBlock, LogMelBlock, DctBlock, FcLayer,
                               ActivationLayer, ConvLayer, PoolLayer, BatchNormLayer>;

// Per-frame blocks run once per analysis frame; per-window blocks once per
// measurement window.
enum class BlockScope { frame, window };

struct PipelineBlock {
  BlockSpec spec;
  std::string memory_level;          // empty: first level of the profile
  std::optional<BlockScope> scope;   // NN layers only; DSP blocks are per-frame

  friend bool operator==(const PipelineBlock&, const PipelineBlock&) = default;
};

struct PipelinePlan {
  std::optional<MfccConfig> mfcc;  // empty: 30 ms / 10 ms geometry at f_s
  std::vector<PipelineBlock> blocks;

  friend bool operator==(const PipelinePlan&, const PipelinePlan&) = default;
};

std::string_view block_kind_name(const BlockSpec& spec);
bool is_dsp_block(const BlockSpec& spec);

// The canonical framing -> FFT -> log-Mel -> DCT chain.
PipelinePlan mfcc_plan();

struct PipelineCost {
  CostReport total;
  std::vector<CostReport> blocks;  // scaled and placed, one per plan block
  std::uint64_t frames = 0;        // 0 when no block runs per frame
  std::uint64_t output_width = 0;  // values produced by the last block per run
  BlockScope output_scope = BlockScope::window;
  BitCount output_bits = 0;        // bits produced per window
};

// Checks dimension chaining, places each block on its memory level and scales
// per-frame blocks by the frame count. Throws ConfigError naming the
// offending block ("pipeline.blocks.<i>").
PipelineCost cost_pipeline(const PipelinePlan& plan, Second delta, Hertz f_s,
                           const ProcessingProfile& profile);

}  // namespace wasnem
