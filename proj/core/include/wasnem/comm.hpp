#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wasnem/ops.hpp"
#include "wasnem/params.hpp"
#include "wasnem/retransmission.hpp"
#include "wasnem/units.hpp"

// Communication layer: frame timing, PA and electronics power, coding cost,
// error rates and the per-bit transmit/receive energies of a truncated-ARQ
// link.

namespace wasnem {

enum class LinkDirection { uplink, downlink };

// Frame structure and channel. Bit counts are plain bits; mean_snr is linear.
struct LinkConfig {
  unsigned n_tx_antennas = 1;    // N_t
  unsigned n_rx_antennas = 1;    // N_r
  double mux_gain = 1.0;         // omega
  unsigned m_ary = 2;            // M (BPSK)
  BitCount header_bits = 16;     // H
  BitCount payload_bits_up = 1016;    // L_u
  BitCount payload_bits_down = 1016;  // L_d
  BitCount acq_overhead_bits = 32;    // O_a, per transceiver branch
  BitCount other_overhead_bits = 8;   // O_b
  BitCount feedback_bits = 40;        // F
  Meter distance_d = 10.0;
  double path_loss_alpha = 3.2;
  double mean_snr = db_to_linear(25.0);
  unsigned max_trials = 3;       // x
  Fading fading = Fading::fast;

  unsigned bits_per_symbol() const;
  BitCount payload_bits(LinkDirection dir) const;

  friend bool operator==(const LinkConfig&, const LinkConfig&) = default;
};

// Throws ConfigError on a broken invariant; returns warnings (alpha < 2).
std::vector<std::string> validate(const LinkConfig& link);

// Scenario-level coding choice; expanded per direction by make_bch_scheme().
struct CodingConfig {
  std::optional<BitCount> codeword_len;  // n; defaults to the payload length
  BitCount correctable_t = 4;            // t
  std::optional<double> code_rate;       // r; defaults to k / n of BCH(n, t)
  std::optional<OpCounts> enc_ops;       // per codeword
  std::optional<OpCounts> dec_ops;       // per codeword

  friend bool operator==(const CodingConfig&, const CodingConfig&) = default;
};

struct CodingScheme {
  BitCount codeword_len = 1016;        // n
  BitCount correctable_t = 0;          // t
  BitCount codewords_per_payload = 1;  // n_c = L / n
  double code_rate = 1.0;              // r
  OpCounts enc_ops{};                  // per codeword
  OpCounts dec_ops{};                  // per codeword
};

// Parity bits of a binary BCH(n, t) code: m * t with m the smallest integer
// such that 2^m - 1 >= n.
BitCount bch_parity_bits(BitCount n, BitCount t);

// Default BCH op-count model. Encoding: n * (n - k) MAC-equivalent LFSR
// steps. Decoding: 2nt + 2t^2 multiplications and t^2 additions (syndromes
// plus Berlekamp-Massey).
OpCounts bch_encode_ops(BitCount n, BitCount k);
OpCounts bch_decode_ops(BitCount n, BitCount t);

// Expands `config` for a payload of `payload_bits`. ConfigError when n does
// not divide L, or the code has no information bits.
CodingScheme make_bch_scheme(BitCount payload_bits, const CodingConfig& config);

// ---- timing -------------------------------------------------------------

// T_b = 1/(r R_s) * (1/(omega b) + H/(omega L) + (N_t O_a + O_b)/L)
Second bit_time_forward(const LinkConfig& link, const CodingScheme& coding,
                        const CommProfile& profile, LinkDirection dir = LinkDirection::uplink);

// T_fb = F / (r omega R_s L)
Second feedback_time(const LinkConfig& link, const CodingScheme& coding,
                     const CommProfile& profile, LinkDirection dir = LinkDirection::uplink);

// ---- power --------------------------------------------------------------

// Peak-to-average power ratio xi = 3(sqrt(M)-1)/(sqrt(M)+1); 1 for BPSK
// (constant envelope).
double peak_to_average_ratio(unsigned m_ary);

// Free-space constant A_0 = (4 pi / lambda)^2 / (G_t G_r).
double friis_constant(const CommProfile& profile);

// A = (xi/S)^beta * N_0 W N_f M_L A_0 / eta_max, so that sum_j P_PA = A omega d^alpha gamma.
double pa_constant(unsigned m_ary, const CommProfile& profile);

Watt pa_power_total(const LinkConfig& link, const CommProfile& profile);

enum class RadioSide { tx, rx };

// Per-branch electronics power.
//   tx: P_DAC + 2 P_filter + P_LO + P_mixer
//   rx: 3 P_filter + P_LNA + P_LO + P_mixer + P_VGA + P_ADC
Watt electronics_power(RadioSide side, const CommProfile& profile);

// P = (beta/2) * (V_dd I_unit (2^n - 1) + n C_p f_s V_dd^2)
Watt dac_power(const DacModel& dac);

// ---- coding cost --------------------------------------------------------

enum class CodingOp { encode, decode };

// Codewords needed to carry `n_bits` information bits: N / (r n).
double codewords_per_message(const CodingScheme& coding, BitCount n_bits);

// (1/N) E_cc sum_j c_j n_j over all codewords of an N-bit message.
JoulePerBit coding_energy_per_bit(CodingOp op, const CodingScheme& coding,
                                  const ProcessingProfile& processing, BitCount n_bits);

// ---- error rates --------------------------------------------------------

double q_function(double x);

// AWGN bit error rate at instantaneous SNR (BPSK: Q(sqrt(2 gamma)); square
// M-QAM: (4/b)(1 - 1/sqrt(M)) Q(sqrt(3 b gamma / (M-1)))).
double ber_awgn(double snr, unsigned m_ary);

// Rayleigh-averaged BER for fast fading; AWGN BER at the mean SNR for block
// fading (the block distribution is handled at the frame level).
double ber_m_ary(double mean_snr, unsigned m_ary, Fading fading);
double ber_binary(double mean_snr, Fading fading);

bool supported_m_ary(unsigned m_ary);

struct BitErrorRates {
  double payload = 0.0;  // P_b, M-ary payload modulation
  double header = 0.0;   // P_bin, binary header modulation
};

// P_f = 1 - (1 - P_bin)^H [ sum_{j<=t} C(n,j) (1-P_b)^{n-j} P_b^j ]^{n_c}
double frame_error_rate(BitCount header_bits, const CodingScheme& coding, BitErrorRates ber);

// Distribution of the per-coherence-block frame error rate of a link: a
// point mass at P_f(mean BER) for fast fading, P_f(gamma) with gamma ~
// Exp(mean_snr) for block fading.
FrameErrorDistribution frame_error_distribution(const LinkConfig& link, const CodingScheme& coding);

RetransmissionStats link_retransmission_stats(const LinkConfig& link, const CodingScheme& coding);

// ---- per-bit energies ---------------------------------------------------

// Components of an average energy per correctly delivered information bit.
struct PerBitEnergy {
  JoulePerBit startup = 0.0;
  JoulePerBit coding = 0.0;
  JoulePerBit electronics_tx = 0.0;  // transmitter electronics
  JoulePerBit electronics_rx = 0.0;  // receiver electronics
  JoulePerBit pa_forward = 0.0;      // PA, forward frames
  JoulePerBit pa_feedback = 0.0;     // PA, feedback frames
  JoulePerBit total = 0.0;

  JoulePerBit component_sum() const;
};

struct LinkModel {
  const LinkConfig& link;
  const CodingScheme& coding;
  const CommProfile& comm;
  const ProcessingProfile& processing;
};

// E_T = (E_st/(1-q_x))/N_T + E_enc
//       + [(N_t P_etx + A d^alpha omega gamma) T_b + N_t P_erx T_fb] Phi(x)
PerBitEnergy energy_tx_per_bit(const LinkModel& model, BitCount n_tx_bits,
                               const RetransmissionStats& stats);

// E_R = E_st/((1-q_x) N_R)
//       + [E_dec + N_r P_erx T_b + (N_r P_etx + A d^alpha omega gamma) T_fb] Phi(x)
PerBitEnergy energy_rx_per_bit(const LinkModel& model, BitCount n_rx_bits,
                               const RetransmissionStats& stats);

struct LinkEnergy {
  PerBitEnergy transmit;  // E_T
  PerBitEnergy receive;   // E_R
  RetransmissionStats uplink_stats;
  RetransmissionStats downlink_stats;
  CodingScheme uplink_coding;
  CodingScheme downlink_coding;
};

// Full link evaluation: per-direction coding, error rates, retransmission
// statistics and per-bit energies. A zero bit count leaves that direction at
// zero energy.
LinkEnergy link_energy(const LinkConfig& link, const CodingConfig& coding,
                       const HardwareProfile& profile, BitCount n_tx_bits, BitCount n_rx_bits);

std::string_view to_string(Fading fading);

}  // namespace wasnem
