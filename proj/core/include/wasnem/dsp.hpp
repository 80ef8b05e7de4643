#pragma once

#include <cstdint>
#include <string>

#include "wasnem/hwcost.hpp"
#include "wasnem/units.hpp"

// Cost models of the MFCC feature-extraction chain. Every emitter returns the
// cost of ONE frame; pipelines scale by frames_per_window().

namespace wasnem {

inline const std::string kDefaultMemoryLevel = "onchip_sram";

struct MfccConfig {
  std::uint64_t frame_len_samples = 480;  // N_t
  std::uint64_t hop_samples = 160;
  std::uint64_t fft_len = 512;            // N_f, radix-2
  std::uint64_t n_mel_bands = 40;         // N_m
  std::uint64_t n_cepstra = 14;           // N_c
  unsigned word_size_bits = 32;           // S
  // DCT storage of (N_m + 1) * N_c words (true) or bits (false); the source
  // formula omits the word size for this block only.
  bool dct_storage_times_wordsize = true;

  // 30 ms frames with a 10 ms hop at `f_s`, FFT length the next power of two.
  static MfccConfig for_sample_rate(Hertz f_s, unsigned word_size_bits = 32);

  friend bool operator==(const MfccConfig&, const MfccConfig&) = default;
};

bool is_power_of_two(std::uint64_t n);
std::uint64_t next_power_of_two(std::uint64_t n);

// Throws DomainError on a broken invariant (hop > N_t, N_f not the next
// power of two >= N_t, N_c > N_m, ...).
void validate(const MfccConfig& cfg);

// 1 + floor((delta * f_s - N_t) / hop); DomainError if the window is shorter
// than one frame.
std::uint64_t frames_per_window(Second delta, Hertz f_s, const MfccConfig& cfg);

CostReport cost_framing_window(const MfccConfig& cfg, const std::string& level = kDefaultMemoryLevel);
CostReport cost_fft(const MfccConfig& cfg, const std::string& level = kDefaultMemoryLevel);
CostReport cost_log_mel(const MfccConfig& cfg, const std::string& level = kDefaultMemoryLevel);
CostReport cost_dct(const MfccConfig& cfg, const std::string& level = kDefaultMemoryLevel);

}  // namespace wasnem
