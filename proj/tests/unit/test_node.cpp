#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wasnem/errors.hpp"
#include "wasnem/node.hpp"

using namespace wasnem;
using testing::rel_close;

TEST_SUITE("node") {
  TEST_CASE("degenerate node spends only on sensing") {
    HardwareProfile profile;
    profile.sensing.mic_kind = MicKind::passive;
    Scenario s;
    s.pipeline.blocks.clear();
    s.n_tx_bits = 0;
    s.n_rx_bits = 0;
    const EnergyBreakdown e = node_energy(s, profile);
    CHECK(e.processing.total == 0.0);
    CHECK(e.tx == 0.0);
    CHECK(e.rx == 0.0);
    CHECK(e.total == e.sensing.total);
    CHECK(e.sensing.e_mic == 0.0);
    CHECK(e.total > 0.0);
  }

  TEST_CASE("default node golden values") {
    const EnergyBreakdown e = node_energy(default_scenario(), default_profile());
    CHECK(rel_close(e.total, 0.043668617309355715, 1e-12));
    CHECK(rel_close(lifetime(default_scenario(), default_profile()), 4286831.4028320201, 1e-12));
    CHECK(rel_close(e.total, e.layer_sum(), 1e-15));
    CHECK(e.warnings.empty());
    CHECK(e.pipeline.output_bits == 43904);
    CHECK(rel_close(e.tx, 43904 * e.link.transmit.total, 1e-15));
    CHECK(rel_close(e.rx, 976 * e.link.receive.total, 1e-15));
    // uplink radio, then the active microphone, then MFCC, then the downlink
    CHECK(e.tx > e.sensing.total);
    CHECK(e.sensing.total > e.processing.total);
    CHECK(e.processing.total > e.rx);
    CHECK(rel_close(e.sensing.total, 0.010032795159125541, 1e-12));
    CHECK(rel_close(e.processing.total, 0.0023244704640000002, 1e-12));
    CHECK(rel_close(e.tx, 0.03087176844903192, 1e-12));
    CHECK(rel_close(e.rx, 0.000439583237198256, 1e-12));
    CHECK(rel_close(e.link.uplink_stats.phi, 1.0141358838900341, 1e-12));
  }

  TEST_CASE("doubling the uplink payload less than doubles its energy") {
    const HardwareProfile p = default_profile();
    Scenario s = default_scenario();
    const EnergyBreakdown one = node_energy(s, p);
    s.n_tx_bits *= 2;
    const EnergyBreakdown two = node_energy(s, p);
    CHECK(two.total > one.total);
    CHECK(two.total - one.total < one.tx);
    CHECK(two.tx < 2 * one.tx);
  }

  TEST_CASE("a mismatch between pipeline output and N_T warns") {
    Scenario s = default_scenario();
    s.n_tx_bits = 1000;
    const EnergyBreakdown e = node_energy(s, default_profile());
    REQUIRE(e.warnings.size() == 1);
    CHECK(e.warnings[0].find("n_tx_bits") != std::string::npos);
  }

  TEST_CASE("lifetime identities") {
    Scenario s;
    s.duty_cycle = 1.0;
    s.n_batteries = 1;
    s.battery_capacity = 3.5;
    s.delta = 1.0;
    CHECK(lifetime(s, 3.5) == 1.0);
    const double base = lifetime(s, 0.7);
    s.duty_cycle = 0.5;
    CHECK(lifetime(s, 0.7) == 2 * base);
    s.duty_cycle = 0.25;
    CHECK(lifetime(s, 0.7) == 4 * base);
    s.duty_cycle = 1.0;
    s.n_batteries = 4;
    CHECK(lifetime(s, 0.7) == 4 * base);
    s.n_batteries = 1;
    s.battery_capacity = 7.0;
    CHECK(lifetime(s, 0.7) == 2 * base);
    s.battery_capacity = 3.5;
    s.delta = 8.0;
    CHECK(lifetime(s, 0.7) == 8 * base);
    CHECK(lifetime(s, 1.4) == doctest::Approx(4 * base));
    CHECK_THROWS_AS(lifetime(s, 0.0), DivergenceError);
  }

  TEST_CASE("sleep costs nothing") {
    // energy per window is independent of the duty cycle
    Scenario a = default_scenario();
    Scenario b = a;
    b.duty_cycle = 0.01;
    CHECK(node_energy(a, default_profile()).total == node_energy(b, default_profile()).total);
  }

  TEST_CASE("scenario validation names the field") {
    auto field_of = [](const Scenario& s) {
      try {
        validate(s);
      } catch (const ConfigError& e) {
        return e.field();
      }
      return std::string();
    };
    Scenario s;
    s.duty_cycle = 0.0;
    CHECK(field_of(s) == "duty_cycle");
    s = Scenario{};
    s.duty_cycle = 1.5;
    CHECK(field_of(s) == "duty_cycle");
    s = Scenario{};
    s.delta = -1.0;
    CHECK(field_of(s) == "delta");
    s = Scenario{};
    s.n_batteries = 0;
    CHECK(field_of(s) == "n_batteries");
    s = Scenario{};
    s.link.path_loss_alpha = 1.5;
    const auto warnings = validate(s);
    CHECK(warnings.size() == 1);
  }

  TEST_CASE("a link that never delivers diverges") {
    Scenario s = default_scenario();
    s.link.mean_snr = db_to_linear(-30.0);
    CHECK_THROWS_AS(node_energy(s, default_profile()), DivergenceError);
  }
}
