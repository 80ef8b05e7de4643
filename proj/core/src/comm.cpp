#include "wasnem/comm.hpp"

#include <bit>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>

#include "wasnem/errors.hpp"
#include "wasnem/sensing.hpp"

namespace wasnem {

unsigned LinkConfig::bits_per_symbol() const {
  return static_cast<unsigned>(std::countr_zero(m_ary));
}

BitCount LinkConfig::payload_bits(LinkDirection dir) const {
  return dir == LinkDirection::uplink ? payload_bits_up : payload_bits_down;
}

bool supported_m_ary(unsigned m_ary) {
  if (m_ary == 2) return true;
  // square QAM: M = 4^k
  return m_ary >= 4 && std::has_single_bit(m_ary) && std::countr_zero(m_ary) % 2 == 0;
}

std::vector<std::string> validate(const LinkConfig& link) {
  auto require = [](bool ok, const char* field, const char* msg) {
    if (!ok) throw ConfigError("link", field, msg);
  };
  require(link.n_tx_antennas >= 1, "n_tx_antennas", "must be >= 1");
  require(link.n_rx_antennas >= 1, "n_rx_antennas", "must be >= 1");
  require(std::isfinite(link.mux_gain) && link.mux_gain > 0.0, "mux_gain", "must be > 0");
  require(std::has_single_bit(link.m_ary) && link.m_ary >= 2, "m_ary",
          "must be a power of two >= 2");
  require(supported_m_ary(link.m_ary), "m_ary",
          "unsupported constellation (BPSK or square QAM: 2, 4, 16, 64, ...)");
  require(link.payload_bits_up >= 1, "payload_bits_up", "must be >= 1");
  require(link.payload_bits_down >= 1, "payload_bits_down", "must be >= 1");
  require(std::isfinite(link.distance_d) && link.distance_d > 0.0, "distance_d", "must be > 0");
  require(std::isfinite(link.path_loss_alpha) && link.path_loss_alpha > 0.0, "path_loss_alpha",
          "must be > 0");
  require(std::isfinite(link.mean_snr) && link.mean_snr > 0.0, "mean_snr",
          "mean SNR must be > 0 (linear)");
  require(link.max_trials >= 1, "max_trials", "must be >= 1");

  std::vector<std::string> warnings;
  if (link.path_loss_alpha < 2.0) {
    warnings.push_back("link:path_loss_alpha:below the free-space exponent 2");
  }
  return warnings;
}

BitCount bch_parity_bits(BitCount n, BitCount t) {
  const auto m = static_cast<BitCount>(std::bit_width(n));
  return m * t;
}

OpCounts bch_encode_ops(BitCount n, BitCount k) {
  OpCounts ops;
  ops[OpClass::mac] = n * (n - k);
  return ops;
}

OpCounts bch_decode_ops(BitCount n, BitCount t) {
  OpCounts ops;
  ops[OpClass::mul] = 2 * n * t + 2 * t * t;
  ops[OpClass::add] = t * t;
  return ops;
}

CodingScheme make_bch_scheme(BitCount payload_bits, const CodingConfig& config) {
  const BitCount n = config.codeword_len.value_or(payload_bits);
  if (n == 0) throw ConfigError("coding", "codeword_len", "must be >= 1");
  if (payload_bits % n != 0) {
    throw ConfigError("coding", "codeword_len",
                      "codeword length " + std::to_string(n) + " does not divide the payload of " +
                          std::to_string(payload_bits) + " bits");
  }
  const BitCount t = config.correctable_t;
  const BitCount parity = bch_parity_bits(n, t);
  if (parity >= n) {
    throw ConfigError("coding", "correctable_t",
                      "BCH(" + std::to_string(n) + ", t=" + std::to_string(t) +
                          ") leaves no information bits");
  }
  const BitCount k = n - parity;

  CodingScheme s;
  s.codeword_len = n;
  s.correctable_t = t;
  s.codewords_per_payload = payload_bits / n;
  s.code_rate = config.code_rate.value_or(static_cast<double>(k) / static_cast<double>(n));
  if (!(s.code_rate > 0.0 && s.code_rate <= 1.0)) {
    throw ConfigError("coding", "code_rate", "must be in (0, 1]");
  }
  s.enc_ops = config.enc_ops.value_or(bch_encode_ops(n, k));
  s.dec_ops = config.dec_ops.value_or(bch_decode_ops(n, t));
  return s;
}

// ---- timing ---------------------------------------------------------------

Second bit_time_forward(const LinkConfig& link, const CodingScheme& coding,
                        const CommProfile& profile, LinkDirection dir) {
  const double L = static_cast<double>(link.payload_bits(dir));
  const double w = link.mux_gain;
  const double b = link.bits_per_symbol();
  const double overhead =
      1.0 / (w * b) + static_cast<double>(link.header_bits) / (w * L) +
      (link.n_tx_antennas * static_cast<double>(link.acq_overhead_bits) +
       static_cast<double>(link.other_overhead_bits)) /
          L;
  return overhead / (coding.code_rate * profile.symbol_rate_Rs);
}

Second feedback_time(const LinkConfig& link, const CodingScheme& coding,
                     const CommProfile& profile, LinkDirection dir) {
  const double L = static_cast<double>(link.payload_bits(dir));
  return static_cast<double>(link.feedback_bits) /
         (coding.code_rate * link.mux_gain * profile.symbol_rate_Rs * L);
}

// ---- power ----------------------------------------------------------------

double peak_to_average_ratio(unsigned m_ary) {
  if (m_ary == 2) return 1.0;
  const double s = std::sqrt(static_cast<double>(m_ary));
  return 3.0 * (s - 1.0) / (s + 1.0);
}

double friis_constant(const CommProfile& profile) {
  const double wavelength = constants::speed_of_light / profile.f_c;
  const double k = 4.0 * constants::pi / wavelength;
  return k * k / (profile.g_t * profile.g_r);
}

double pa_constant(unsigned m_ary, const CommProfile& p) {
  const double backoff = std::pow(peak_to_average_ratio(m_ary) / p.extra_backoff, p.beta);
  const double noise_power = p.n0 * p.bandwidth_W * p.noise_figure * p.link_margin;
  return backoff * noise_power * friis_constant(p) / p.eta_max;
}

Watt pa_power_total(const LinkConfig& link, const CommProfile& profile) {
  if (!(link.mean_snr > 0.0)) throw DomainError("mean SNR must be positive");
  return pa_constant(link.m_ary, profile) * link.mux_gain *
         std::pow(link.distance_d, link.path_loss_alpha) * link.mean_snr;
}

Watt dac_power(const DacModel& dac) {
  const double levels = std::ldexp(1.0, static_cast<int>(dac.n_bits)) - 1.0;
  const double stat = dac.v_dd * dac.i_unit * levels;
  const double dyn = dac.n_bits * dac.c_parasitic * dac.f_s_dac * dac.v_dd * dac.v_dd;
  return dac.beta_correction / 2.0 * (stat + dyn);
}

Watt electronics_power(RadioSide side, const CommProfile& p) {
  if (side == RadioSide::tx) {
    return dac_power(p.dac) + 2.0 * p.p_filter + p.p_lo + p.p_mixer;
  }
  return 3.0 * p.p_filter + p.p_lna_rx + p.p_lo + p.p_mixer + p.p_vga +
         adc_power(p.adc_rx.n_bits, p.adc_rx.f_s, p.adc_rx.fom);
}

// ---- coding cost ----------------------------------------------------------

double codewords_per_message(const CodingScheme& coding, BitCount n_bits) {
  return static_cast<double>(n_bits) /
         (coding.code_rate * static_cast<double>(coding.codeword_len));
}

JoulePerBit coding_energy_per_bit(CodingOp op, const CodingScheme& coding,
                                  const ProcessingProfile& processing, BitCount n_bits) {
  if (n_bits == 0) throw DomainError("coding energy per bit needs a non-empty message");
  const OpCounts& per_codeword = op == CodingOp::encode ? coding.enc_ops : coding.dec_ops;
  const double message_cycles =
      cycles(per_codeword, processing.op_cycle_costs) * codewords_per_message(coding, n_bits);
  return processing.energy_per_clock_cycle() * message_cycles / static_cast<double>(n_bits);
}

// ---- error rates ----------------------------------------------------------

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

namespace {

// c * Q(sqrt(a * gamma)) for the modulation's AWGN BER.
struct QForm {
  double c;
  double a;
};

QForm awgn_form(unsigned m_ary) {
  if (!supported_m_ary(m_ary)) {
    throw ConfigError("link", "m_ary", "unsupported constellation size " + std::to_string(m_ary));
  }
  if (m_ary == 2) return {1.0, 2.0};
  const double M = m_ary;
  const double b = std::countr_zero(m_ary);
  return {4.0 / b * (1.0 - 1.0 / std::sqrt(M)), 3.0 * b / (M - 1.0)};
}

// E[Q(sqrt(a gamma))], gamma ~ Exp(mean): 0.5 (1 - sqrt(h / (1 + h))), h = a mean / 2.
double rayleigh_average_q(double a, double mean_snr) {
  const double h = a * mean_snr / 2.0;
  const double root = std::sqrt(h / (1.0 + h));
  // 1 - root written without cancellation
  return 0.5 * (1.0 / (1.0 + h)) / (1.0 + root);
}

}  // namespace

double ber_awgn(double snr, unsigned m_ary) {
  const QForm f = awgn_form(m_ary);
  return f.c * q_function(std::sqrt(f.a * std::max(snr, 0.0)));
}

double ber_m_ary(double mean_snr, unsigned m_ary, Fading fading) {
  if (!(mean_snr > 0.0)) throw DomainError("mean SNR must be positive");
  if (fading == Fading::block) return ber_awgn(mean_snr, m_ary);
  const QForm f = awgn_form(m_ary);
  return f.c * rayleigh_average_q(f.a, mean_snr);
}

double ber_binary(double mean_snr, Fading fading) { return ber_m_ary(mean_snr, 2, fading); }

double frame_error_rate(BitCount header_bits, const CodingScheme& coding, BitErrorRates ber) {
  const double pb = ber.payload;
  const double pbin = ber.header;
  if (!(pb >= 0.0 && pb <= 1.0) || !(pbin >= 0.0 && pbin <= 1.0)) {
    throw DomainError("bit error rates must lie in [0, 1]");
  }
  const BitCount n = coding.codeword_len;
  const BitCount t = coding.correctable_t;

  // log P{codeword decodes} = log P{at most t errors among n bits}
  double log_codeword = 0.0;
  if (t < n && pb > 0.0) {
    if (pb >= 1.0) {
      log_codeword = -INFINITY;
    } else {
      boost::math::binomial_distribution<double> errors(static_cast<double>(n), pb);
      const double upper = boost::math::cdf(boost::math::complement(errors, static_cast<double>(t)));
      log_codeword = upper < 0.5 ? std::log1p(-upper)
                                 : std::log(boost::math::cdf(errors, static_cast<double>(t)));
    }
  }
  const double log_header = header_bits == 0 ? 0.0 : static_cast<double>(header_bits) * std::log1p(-pbin);
  const double log_success =
      log_header + static_cast<double>(coding.codewords_per_payload) * log_codeword;
  return -std::expm1(log_success);
}

FrameErrorDistribution frame_error_distribution(const LinkConfig& link, const CodingScheme& coding) {
  if (link.fading == Fading::fast) {
    const BitErrorRates ber{ber_m_ary(link.mean_snr, link.m_ary, Fading::fast),
                            ber_binary(link.mean_snr, Fading::fast)};
    return FrameErrorDistribution::deterministic(frame_error_rate(link.header_bits, coding, ber));
  }
  const BitCount header = link.header_bits;
  const unsigned m = link.m_ary;
  return FrameErrorDistribution::rayleigh(
      [header, coding, m](double snr) {
        return frame_error_rate(header, coding, {ber_awgn(snr, m), ber_awgn(snr, 2)});
      },
      link.mean_snr);
}

RetransmissionStats link_retransmission_stats(const LinkConfig& link, const CodingScheme& coding) {
  return retransmission_stats(frame_error_distribution(link, coding), link.max_trials,
                              link.fading);
}

// ---- per-bit energies -----------------------------------------------------

JoulePerBit PerBitEnergy::component_sum() const {
  return startup + coding + electronics_tx + electronics_rx + pa_forward + pa_feedback;
}

namespace {
void check_finite_stats(const RetransmissionStats& stats) {
  if (!(stats.q_x < 1.0)) {
    throw DivergenceError("outage probability q_x = 1: the link never delivers a frame");
  }
}
}  // namespace

PerBitEnergy energy_tx_per_bit(const LinkModel& m, BitCount n_tx_bits,
                               const RetransmissionStats& stats) {
  check_finite_stats(stats);
  if (n_tx_bits == 0) throw DomainError("energy per transmitted bit needs N_T > 0");
  const double N = static_cast<double>(n_tx_bits);
  const double Nt = m.link.n_tx_antennas;
  const double phi = stats.phi;
  const Second Tb = bit_time_forward(m.link, m.coding, m.comm, LinkDirection::uplink);
  const Second Tfb = feedback_time(m.link, m.coding, m.comm, LinkDirection::uplink);
  const Watt P_etx = electronics_power(RadioSide::tx, m.comm);
  const Watt P_erx = electronics_power(RadioSide::rx, m.comm);
  const Watt P_pa = pa_power_total(m.link, m.comm);
  const JoulePerBit e_enc = coding_energy_per_bit(CodingOp::encode, m.coding, m.processing, n_tx_bits);

  PerBitEnergy e;
  e.startup = m.comm.e_startup / (1.0 - stats.q_x) / N;
  e.coding = e_enc;
  e.electronics_tx = Nt * P_etx * Tb * phi;
  e.pa_forward = P_pa * Tb * phi;
  e.electronics_rx = Nt * P_erx * Tfb * phi;
  e.pa_feedback = 0.0;
  e.total = (m.comm.e_startup / (1.0 - stats.q_x)) / N + e_enc +
            ((Nt * P_etx + P_pa) * Tb + Nt * P_erx * Tfb) * phi;
  return e;
}

PerBitEnergy energy_rx_per_bit(const LinkModel& m, BitCount n_rx_bits,
                               const RetransmissionStats& stats) {
  check_finite_stats(stats);
  if (n_rx_bits == 0) throw DomainError("energy per received bit needs N_R > 0");
  const double N = static_cast<double>(n_rx_bits);
  const double Nr = m.link.n_rx_antennas;
  const double phi = stats.phi;
  const Second Tb = bit_time_forward(m.link, m.coding, m.comm, LinkDirection::downlink);
  const Second Tfb = feedback_time(m.link, m.coding, m.comm, LinkDirection::downlink);
  const Watt P_etx = electronics_power(RadioSide::tx, m.comm);
  const Watt P_erx = electronics_power(RadioSide::rx, m.comm);
  const Watt P_pa = pa_power_total(m.link, m.comm);
  const JoulePerBit e_dec = coding_energy_per_bit(CodingOp::decode, m.coding, m.processing, n_rx_bits);

  PerBitEnergy e;
  e.startup = m.comm.e_startup / ((1.0 - stats.q_x) * N);
  e.coding = e_dec * phi;
  e.electronics_rx = Nr * P_erx * Tb * phi;
  e.electronics_tx = Nr * P_etx * Tfb * phi;
  e.pa_feedback = P_pa * Tfb * phi;
  e.pa_forward = 0.0;
  e.total = m.comm.e_startup / ((1.0 - stats.q_x) * N) +
            (e_dec + Nr * P_erx * Tb + (Nr * P_etx + P_pa) * Tfb) * phi;
  return e;
}

LinkEnergy link_energy(const LinkConfig& link, const CodingConfig& coding,
                       const HardwareProfile& profile, BitCount n_tx_bits, BitCount n_rx_bits) {
  LinkEnergy out;
  out.uplink_coding = make_bch_scheme(link.payload_bits_up, coding);
  out.downlink_coding = make_bch_scheme(link.payload_bits_down, coding);
  out.uplink_stats = link_retransmission_stats(link, out.uplink_coding);
  out.downlink_stats = link_retransmission_stats(link, out.downlink_coding);
  if (n_tx_bits > 0) {
    out.transmit = energy_tx_per_bit({link, out.uplink_coding, profile.comm, profile.processing},
                                     n_tx_bits, out.uplink_stats);
  }
  if (n_rx_bits > 0) {
    out.receive = energy_rx_per_bit({link, out.downlink_coding, profile.comm, profile.processing},
                                    n_rx_bits, out.downlink_stats);
  }
  return out;
}

std::string_view to_string(Fading fading) { return fading == Fading::block ? "block" : "fast"; }

}  // namespace wasnem
