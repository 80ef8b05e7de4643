#include "wasnem/dsp.hpp"

#include <bit>
#include <cmath>

#include "wasnem/errors.hpp"

namespace wasnem {

bool is_power_of_two(std::uint64_t n) { return std::has_single_bit(n); }

std::uint64_t next_power_of_two(std::uint64_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

MfccConfig MfccConfig::for_sample_rate(Hertz f_s, unsigned word_size_bits) {
  MfccConfig cfg;
  cfg.frame_len_samples = static_cast<std::uint64_t>(std::llround(0.030 * f_s));
  cfg.hop_samples = static_cast<std::uint64_t>(std::llround(0.010 * f_s));
  cfg.fft_len = next_power_of_two(cfg.frame_len_samples);
  cfg.word_size_bits = word_size_bits;
  return cfg;
}

void validate(const MfccConfig& cfg) {
  if (cfg.frame_len_samples == 0) throw DomainError("mfcc: frame_len_samples must be >= 1");
  if (cfg.hop_samples == 0 || cfg.hop_samples > cfg.frame_len_samples) {
    throw DomainError("mfcc: hop_samples must be in [1, frame_len_samples]");
  }
  if (!is_power_of_two(cfg.fft_len) || cfg.fft_len < 2) {
    throw DomainError("mfcc: fft_len must be a power of two >= 2");
  }
  if (cfg.fft_len != std::max<std::uint64_t>(2, next_power_of_two(cfg.frame_len_samples))) {
    throw DomainError("mfcc: fft_len must be the next power of two >= frame_len_samples");
  }
  if (cfg.n_mel_bands == 0) throw DomainError("mfcc: n_mel_bands must be >= 1");
  if (cfg.n_cepstra == 0 || cfg.n_cepstra > cfg.n_mel_bands) {
    throw DomainError("mfcc: n_cepstra must be in [1, n_mel_bands]");
  }
  if (cfg.word_size_bits == 0) throw DomainError("mfcc: word_size_bits must be > 0");
}

std::uint64_t frames_per_window(Second delta, Hertz f_s, const MfccConfig& cfg) {
  if (cfg.hop_samples == 0) throw DomainError("mfcc: hop_samples must be >= 1");
  const double samples = std::floor(delta * f_s + 1e-9);
  if (!(samples >= static_cast<double>(cfg.frame_len_samples))) {
    throw DomainError("window shorter than one frame");
  }
  const auto n = static_cast<std::uint64_t>(samples);
  return 1 + (n - cfg.frame_len_samples) / cfg.hop_samples;
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

std::uint64_t log2_exact(std::uint64_t n) {
  return static_cast<std::uint64_t>(std::countr_zero(n));
}

}  // namespace

CostReport cost_framing_window(const MfccConfig& cfg, const std::string& level) {
  const std::uint64_t nt = cfg.frame_len_samples;
  const unsigned S = cfg.word_size_bits;
  CostReport r = make_report("framing_window", level, 4 * nt, 2 * nt * S, S);
  r.op_counts[OpClass::mac] = nt;
  return r;
}

CostReport cost_fft(const MfccConfig& cfg, const std::string& level) {
  const std::uint64_t nf = cfg.fft_len;
  if (!is_power_of_two(nf) || nf < 2) {
    throw DomainError("fft length must be a power of two >= 2");
  }
  const unsigned S = cfg.word_size_bits;
  const std::uint64_t stages = log2_exact(nf);
  const std::uint64_t complex_mults = nf / 2 * stages;
  const std::uint64_t complex_adds = nf * stages;
  CostReport r = make_report("fft", level, 5 * nf * stages, cfg.frame_len_samples * S, S);
  // complex multiply = 4 mul + 2 add, complex add = 2 add
  r.op_counts[OpClass::mul] = 4 * complex_mults;
  r.op_counts[OpClass::add] = 2 * complex_mults + 2 * complex_adds;
  return r;
}

CostReport cost_log_mel(const MfccConfig& cfg, const std::string& level) {
  const std::uint64_t nf = cfg.fft_len;
  const std::uint64_t nm = cfg.n_mel_bands;
  const unsigned S = cfg.word_size_bits;
  CostReport r = make_report("log_mel", level, 2 * nf * nm + 2 * nm, (nf / 2 * nm + nm) * S, S);
  r.op_counts[OpClass::mac] = nf / 2 * nm;
  r.op_counts[OpClass::log] = nm;
  return r;
}

CostReport cost_dct(const MfccConfig& cfg, const std::string& level) {
  const std::uint64_t nm = cfg.n_mel_bands;
  const std::uint64_t nc = cfg.n_cepstra;
  if (nc > nm) throw DomainError("dct: n_cepstra must not exceed n_mel_bands");
  const unsigned S = cfg.word_size_bits;
  const BitCount stored = (nm + 1) * nc * (cfg.dct_storage_times_wordsize ? S : 1u);
  CostReport r = make_report("dct", level, 4 * nm * nc, stored, S);
  r.op_counts[OpClass::mac] = nm * nc;
  return r;
}

}  // namespace wasnem
