#include "wasnem/node.hpp"

#include <cmath>

#include "wasnem/errors.hpp"

namespace wasnem {

Scenario default_scenario() { return Scenario{}; }

std::vector<std::string> validate(const Scenario& s) {
  if (!(std::isfinite(s.delta) && s.delta > 0.0)) {
    throw ConfigError("node", "delta", "active window must be > 0 s");
  }
  if (!(s.duty_cycle > 0.0 && s.duty_cycle <= 1.0)) {
    throw ConfigError("node", "duty_cycle", "must be in (0, 1]");
  }
  if (s.n_batteries < 1) throw ConfigError("node", "n_batteries", "must be >= 1");
  if (!(std::isfinite(s.battery_capacity) && s.battery_capacity > 0.0)) {
    throw ConfigError("node", "battery_capacity", "must be > 0 J");
  }
  return validate(s.link);
}

EnergyBreakdown node_energy(const Scenario& s, const HardwareProfile& profile) {
  EnergyBreakdown out;
  out.warnings = validate(s);

  out.sensing = sensing_energy(profile.sensing, s.delta);

  if (!s.pipeline.blocks.empty()) {
    out.pipeline = cost_pipeline(s.pipeline, s.delta, profile.sensing.f_s_mic, profile.processing);
    out.processing = energy_of(out.pipeline.total, profile.processing, s.delta);
    if (out.pipeline.output_bits != s.n_tx_bits) {
      out.warnings.push_back("node:n_tx_bits:" + std::to_string(s.n_tx_bits) +
                             " differs from the pipeline output of " +
                             std::to_string(out.pipeline.output_bits) + " bits per window");
    }
  }

  out.link = link_energy(s.link, s.coding, profile, s.n_tx_bits, s.n_rx_bits);
  out.tx = static_cast<double>(s.n_tx_bits) * out.link.transmit.total;
  out.rx = static_cast<double>(s.n_rx_bits) * out.link.receive.total;
  out.total = out.sensing.total + out.processing.total + out.tx + out.rx;
  return out;
}

Second lifetime(const Scenario& s, Joule node_energy) {
  if (!(node_energy > 0.0)) {
    throw DivergenceError("node energy per window is zero: lifetime is unbounded");
  }
  return s.n_batteries * s.battery_capacity / node_energy * s.delta / s.duty_cycle;
}

Second lifetime(const Scenario& s, const HardwareProfile& profile) {
  return lifetime(s, node_energy(s, profile).total);
}

}  // namespace wasnem
