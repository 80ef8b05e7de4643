#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <cmath>

#include "helpers.hpp"
#include "wasnem/comm.hpp"
#include "wasnem/errors.hpp"
#include "wasnem/sensing.hpp"

using namespace wasnem;
using testing::rel_close;

namespace {

CodingScheme uncoded(BitCount n = 1016) {
  CodingScheme c;
  c.codeword_len = n;
  c.codewords_per_payload = 1;
  return c;
}

// Binomial upper tail summed term by term in long double, so small frame
// error rates keep their relative precision.
double fer_oracle(BitCount H, BitCount n, BitCount t, BitCount n_c, double pb, double pbin) {
  long double tail = 0.0L;
  for (BitCount j = t + 1; j <= n; ++j) {
    tail += static_cast<long double>(boost::math::binomial_coefficient<double>(
                static_cast<unsigned>(n), static_cast<unsigned>(j))) *
            std::pow(1.0L - pb, static_cast<long double>(n - j)) *
            std::pow(static_cast<long double>(pb), static_cast<long double>(j));
  }
  return static_cast<double>(-std::expm1(static_cast<long double>(H) * std::log1p(-static_cast<long double>(pbin)) +
                                         static_cast<long double>(n_c) * std::log1p(-tail)));
}

struct Fixture {
  LinkConfig link;
  CodingScheme coding = uncoded();
  CommProfile comm;
  ProcessingProfile processing;
  LinkModel model() const { return {link, coding, comm, processing}; }
};

void silence_radio(CommProfile& comm) {
  comm.p_filter = comm.p_mixer = comm.p_lna_rx = comm.p_vga = comm.p_lo = 0.0;
  comm.dac.i_unit = 0.0;
  comm.dac.c_parasitic = 0.0;
  comm.adc_rx.fom = 0.0;
  comm.n0 = 0.0;
}

}  // namespace

TEST_SUITE("comm") {
  TEST_CASE("frame timing") {
    const LinkConfig link;
    const CommProfile comm;
    const double tb = bit_time_forward(link, uncoded(), comm);
    CHECK(rel_close(tb, 8e-6 * (1.0 + 16.0 / 1016 + 40.0 / 1016), 1e-14));
    CHECK(tb == doctest::Approx(8.441e-6).epsilon(1e-3));
    CHECK(feedback_time(link, uncoded(), comm) == doctest::Approx(0.315e-6).epsilon(1e-3));

    LinkConfig bare = link;
    bare.header_bits = bare.acq_overhead_bits = bare.other_overhead_bits = 0;
    CHECK(rel_close(bit_time_forward(bare, uncoded(), comm), 1.0 / 0.125e6, 1e-15));

    LinkConfig qam = link;
    qam.m_ary = 4;
    const double overhead = 8e-6 * (16.0 + 40.0) / 1016;
    CHECK(rel_close(bit_time_forward(qam, uncoded(), comm) - overhead, 4e-6, 1e-12));

    LinkConfig no_fb = link;
    no_fb.feedback_bits = 0;
    CHECK(feedback_time(no_fb, uncoded(), comm) == 0.0);
    LinkConfig fb2 = link;
    fb2.feedback_bits = 80;
    CHECK(rel_close(feedback_time(fb2, uncoded(), comm), 2 * feedback_time(link, uncoded(), comm),
                    1e-15));
  }

  TEST_CASE("downlink timing uses the downlink payload") {
    LinkConfig link;
    link.payload_bits_down = 508;
    const CommProfile comm;
    CHECK(bit_time_forward(link, uncoded(508), comm, LinkDirection::downlink) >
          bit_time_forward(link, uncoded(), comm, LinkDirection::uplink));
  }

  TEST_CASE("PA power") {
    CHECK(peak_to_average_ratio(2) == 1.0);
    CHECK(rel_close(peak_to_average_ratio(16), 1.8, 1e-15));

    const CommProfile comm;
    LinkConfig link;
    const double lambda = constants::speed_of_light / comm.f_c;
    const double a0 = std::pow(4 * constants::pi / lambda, 2) / (comm.g_t * comm.g_r);
    const double expected = comm.n0 * comm.bandwidth_W * comm.noise_figure * comm.link_margin *
                            a0 / comm.eta_max * std::pow(10.0, 3.2) * link.mean_snr;
    CHECK(rel_close(pa_power_total(link, comm), expected, 1e-12));

    LinkConfig far = link;
    far.distance_d = 20.0;
    CHECK(rel_close(pa_power_total(far, comm) / pa_power_total(link, comm), std::pow(2.0, 3.2),
                    1e-12));
  }

  TEST_CASE("electronics and DAC power") {
    CommProfile comm;
    const double p_adc = adc_power(comm.adc_rx.n_bits, comm.adc_rx.f_s, comm.adc_rx.fom);
    CHECK(rel_close(electronics_power(RadioSide::rx, comm), 34.5e-3 + p_adc, 1e-14));
    CHECK(rel_close(dac_power(comm.dac), 15.525e-3, 1e-12));
    CHECK(rel_close(electronics_power(RadioSide::tx, comm), 15.525e-3 + 2e-3 + 22.5e-3 + 1e-3,
                    1e-12));

    DacModel one = comm.dac;
    one.n_bits = 1;
    one.c_parasitic = 0.0;
    CHECK(rel_close(dac_power(one), 0.5 * one.v_dd * one.i_unit, 1e-15));

    silence_radio(comm);
    CHECK(electronics_power(RadioSide::tx, comm) == 0.0);
    CHECK(electronics_power(RadioSide::rx, comm) == 0.0);
  }

  TEST_CASE("BCH scheme expansion") {
    const CodingScheme s = make_bch_scheme(1016, CodingConfig{});
    CHECK(s.codeword_len == 1016);
    CHECK(s.codewords_per_payload == 1);
    CHECK(bch_parity_bits(1016, 4) == 40);
    CHECK(rel_close(s.code_rate, 976.0 / 1016, 1e-15));
    CHECK(s.enc_ops[OpClass::mac] == 40640);
    CHECK(s.dec_ops[OpClass::mul] == 8160);
    CHECK(s.dec_ops[OpClass::add] == 16);

    CodingConfig split;
    split.codeword_len = 127;
    split.correctable_t = 1;
    const CodingScheme p = make_bch_scheme(1016, split);
    CHECK(p.codewords_per_payload == 8);
    CHECK(rel_close(p.code_rate, 120.0 / 127, 1e-15));

    CodingConfig bad = split;
    bad.codeword_len = 100;
    try {
      make_bch_scheme(1016, bad);
      FAIL("expected a coding error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "codeword_len");
    }
    CodingConfig too_many;
    too_many.codeword_len = 15;
    too_many.correctable_t = 4;
    CHECK_THROWS_AS(make_bch_scheme(1020, too_many), ConfigError);
    CodingConfig bad_rate;
    bad_rate.code_rate = 1.5;
    CHECK_THROWS_AS(make_bch_scheme(1016, bad_rate), ConfigError);
  }

  TEST_CASE("coding energy per bit") {
    const ProcessingProfile proc;
    const CodingScheme s = make_bch_scheme(1016, CodingConfig{});
    const double expected = proc.energy_per_clock_cycle() * cycles(s.enc_ops, proc.op_cycle_costs) *
                            (976.0 / (s.code_rate * 1016.0)) / 976.0;
    CHECK(rel_close(coding_energy_per_bit(CodingOp::encode, s, proc, 976), expected, 1e-12));
    CHECK(coding_energy_per_bit(CodingOp::encode, uncoded(), proc, 976) == 0.0);
    CHECK_THROWS_AS(coding_energy_per_bit(CodingOp::decode, s, proc, 0), DomainError);
    // per-bit cost is independent of the message size: the op total scales with N
    CHECK(rel_close(coding_energy_per_bit(CodingOp::decode, s, proc, 2 * 976),
                    coding_energy_per_bit(CodingOp::decode, s, proc, 976), 1e-14));
  }

  TEST_CASE("bit error rates") {
    for (double g : {0.1, 1.0, 10.0, 1000.0}) {
      CHECK(rel_close(ber_binary(g, Fading::fast), 0.5 * (1 - std::sqrt(g / (1 + g))), 1e-12));
      CHECK(rel_close(ber_binary(g, Fading::block), q_function(std::sqrt(2 * g)), 1e-14));
    }
    CHECK(ber_binary(10.0, Fading::fast) == doctest::Approx(0.0233).epsilon(1e-2));
    CHECK(ber_binary(1e-12, Fading::fast) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(ber_binary(1e12, Fading::fast) < 1e-12);
    CHECK(ber_binary(1e12, Fading::fast) > 0.0);
    CHECK_THROWS_AS(ber_binary(0.0, Fading::fast), DomainError);
    CHECK(ber_m_ary(5.0, 2, Fading::fast) == ber_binary(5.0, Fading::fast));

    // square QAM averaged over Rayleigh, against a direct quadrature of the AWGN form
    const double g = 20.0;
    double acc = 0.0;
    const int steps = 400000;
    const double hi = 40 * g;
    for (int i = 0; i < steps; ++i) {
      const double x = (i + 0.5) * hi / steps;
      acc += ber_awgn(x, 16) * std::exp(-x / g) / g * (hi / steps);
    }
    CHECK(std::abs(ber_m_ary(g, 16, Fading::fast) - acc) < 1e-6);

    CHECK(supported_m_ary(2));
    CHECK(supported_m_ary(4));
    CHECK(supported_m_ary(64));
    CHECK_FALSE(supported_m_ary(8));
    CHECK_FALSE(supported_m_ary(3));
    CHECK_THROWS_AS(ber_m_ary(5.0, 8, Fading::fast), ConfigError);
    LinkConfig odd;
    odd.m_ary = 8;
    CHECK_THROWS_AS(validate(odd), ConfigError);
  }

  TEST_CASE("frame error rate") {
    CHECK(frame_error_rate(16, uncoded(), {0.0, 0.0}) == 0.0);
    CHECK(frame_error_rate(0, uncoded(1), {0.3, 0.9}) == doctest::Approx(0.3).epsilon(1e-15));

    CodingScheme bch15;
    bch15.codeword_len = 15;
    bch15.correctable_t = 1;
    CHECK(frame_error_rate(0, bch15, {0.01, 0.01}) == doctest::Approx(0.0096).epsilon(1e-2));
    CHECK(rel_close(frame_error_rate(0, bch15, {0.01, 0.01}), fer_oracle(0, 15, 1, 1, 0.01, 0.01),
                    1e-12));

    for (BitCount t : {0u, 1u, 2u}) {
      for (BitCount nc : {1u, 2u}) {
        for (BitCount h : {0u, 16u}) {
          for (double pb : {1e-6, 1e-3, 0.01, 0.1, 0.6}) {
            CodingScheme c;
            c.codeword_len = 15;
            c.correctable_t = t;
            c.codewords_per_payload = nc;
            CHECK(rel_close(frame_error_rate(h, c, {pb, pb}), fer_oracle(h, 15, t, nc, pb, pb),
                            1e-12));
          }
        }
      }
    }
  }

  TEST_CASE("frame error rate monotonicity") {
    CodingScheme base;
    base.codeword_len = 63;
    base.correctable_t = 2;
    double prev = 0.0;
    for (double pb = 1e-5; pb < 0.5; pb *= 1.7) {
      const double f = frame_error_rate(16, base, {pb, 1e-3});
      CHECK(f >= prev);
      prev = f;
      CHECK(frame_error_rate(16, base, {pb, 2e-3}) >= f);
      CHECK(frame_error_rate(17, base, {pb, 1e-3}) >= f);
      CodingScheme more = base;
      more.codewords_per_payload = 2;
      CHECK(frame_error_rate(16, more, {pb, 1e-3}) >= f);
      CodingScheme stronger = base;
      stronger.correctable_t = 3;
      CHECK(frame_error_rate(16, stronger, {pb, 1e-3}) <= f);
    }
  }

  TEST_CASE("per-bit energies on trivial links") {
    Fixture f;
    silence_radio(f.comm);
    const RetransmissionStats perfect;
    const PerBitEnergy et = energy_tx_per_bit(f.model(), 1000, perfect);
    CHECK(rel_close(et.total, f.comm.e_startup / 1000, 1e-15));
    const PerBitEnergy er = energy_rx_per_bit(f.model(), 1000, perfect);
    CHECK(rel_close(er.total, f.comm.e_startup / 1000, 1e-15));

    RetransmissionStats dead;
    dead.q_x = 1.0;
    CHECK_THROWS_AS(energy_tx_per_bit(f.model(), 1000, dead), DivergenceError);
    CHECK_THROWS_AS(energy_rx_per_bit(f.model(), 1000, dead), DivergenceError);
  }

  TEST_CASE("no feedback frames") {
    Fixture f;
    f.link.feedback_bits = 0;
    const RetransmissionStats stats;
    const PerBitEnergy et = energy_tx_per_bit(f.model(), 1000, stats);
    const PerBitEnergy er = energy_rx_per_bit(f.model(), 1000, stats);
    CHECK(et.electronics_rx == 0.0);
    CHECK(er.pa_feedback == 0.0);
    CHECK(er.electronics_tx == 0.0);
  }

  TEST_CASE("symmetric link") {
    Fixture f;
    // T_b = T_fb when the feedback frame is as long as a full forward frame
    f.link.header_bits = 0;
    f.link.acq_overhead_bits = 0;
    f.link.other_overhead_bits = 0;
    f.link.feedback_bits = f.link.payload_bits_up;
    const LinkModel m = f.model();
    REQUIRE(rel_close(bit_time_forward(f.link, f.coding, f.comm),
                      feedback_time(f.link, f.coding, f.comm), 1e-15));
    const RetransmissionStats stats{0.01, 0.01 / 0.99, 1.2, 3 * 0.01 / 0.99 + 1.2};
    const PerBitEnergy et = energy_tx_per_bit(m, 1000, stats);
    const PerBitEnergy er = energy_rx_per_bit(m, 1000, stats);
    CHECK(rel_close(et.pa_forward, er.pa_feedback, 1e-14));
    CHECK(rel_close(et.electronics_rx, er.electronics_rx, 1e-14));
  }

  TEST_CASE("component closure and startup amortisation") {
    Fixture f;
    f.coding = make_bch_scheme(1016, CodingConfig{});
    const RetransmissionStats stats{1e-3, 1e-3 / (1 - 1e-3), 1.1, 3e-3 / (1 - 1e-3) + 1.1};
    for (BitCount n : {1u, 976u, 43904u, 1000000u}) {
      const PerBitEnergy et = energy_tx_per_bit(f.model(), n, stats);
      const PerBitEnergy er = energy_rx_per_bit(f.model(), n, stats);
      CHECK(rel_close(et.total, et.component_sum(), 1e-12));
      CHECK(rel_close(er.total, er.component_sum(), 1e-12));
      CHECK(energy_tx_per_bit(f.model(), 2 * n, stats).total < et.total);
    }
  }

  TEST_CASE("E_T grows with distance, path loss, SNR and frame error rate") {
    Fixture f;
    const RetransmissionStats stats{1e-3, 1e-3 / (1 - 1e-3), 1.1, 3e-3 / (1 - 1e-3) + 1.1};
    double prev = 0.0;
    for (double d = 1.0; d <= 100.0; d *= 1.5) {
      f.link.distance_d = d;
      const double e = energy_tx_per_bit(f.model(), 43904, stats).total;
      CHECK(e >= prev);
      prev = e;
    }
    f.link = LinkConfig{};
    prev = 0.0;
    for (double a = 2.0; a <= 5.0; a += 0.25) {
      f.link.path_loss_alpha = a;
      const double e = energy_tx_per_bit(f.model(), 43904, stats).total;
      CHECK(e >= prev);
      prev = e;
    }
    f.link = LinkConfig{};
    prev = 0.0;
    for (double db = 0.0; db <= 40.0; db += 2.5) {
      f.link.mean_snr = db_to_linear(db);
      const double e = energy_tx_per_bit(f.model(), 43904, stats).total;
      CHECK(e >= prev);
      prev = e;
    }
    f.link = LinkConfig{};
    prev = 0.0;
    for (double pf = 0.0; pf < 0.95; pf += 0.05) {
      const auto s = retransmission_stats(FrameErrorDistribution::deterministic(pf), 3, Fading::fast);
      const double e = energy_tx_per_bit(f.model(), 43904, s).total;
      CHECK(e >= prev);
      prev = e;
    }
  }

  TEST_CASE("full link evaluation") {
    const HardwareProfile profile;
    const LinkEnergy le = link_energy(LinkConfig{}, CodingConfig{}, profile, 43904, 976);
    CHECK(le.transmit.total > 0.0);
    CHECK(le.receive.total > 0.0);
    CHECK(le.uplink_stats.phi >= 1.0);
    const LinkEnergy idle = link_energy(LinkConfig{}, CodingConfig{}, profile, 0, 0);
    CHECK(idle.transmit.total == 0.0);
    CHECK(idle.receive.total == 0.0);

    LinkConfig block;
    block.fading = Fading::block;
    block.mean_snr = db_to_linear(10.0);
    const LinkEnergy b = link_energy(block, CodingConfig{}, profile, 43904, 976);
    CHECK(std::isfinite(b.transmit.total));
    CHECK(b.uplink_stats.q_x > 0.0);
  }
}
