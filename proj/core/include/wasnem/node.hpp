#pragma once

#include <string>
#include <vector>

#include "wasnem/comm.hpp"
#include "wasnem/hwcost.hpp"
#include "wasnem/params.hpp"
#include "wasnem/pipeline.hpp"
#include "wasnem/sensing.hpp"

// Node composition: one active window of sensing, processing and radio
// traffic, and the resulting battery lifetime. Sleep costs nothing.

namespace wasnem {

struct Scenario {
  Second delta = 1.0;               // active window
  double duty_cycle = 0.1;          // fraction of time awake, (0, 1]
  unsigned n_batteries = 2;
  Joule battery_capacity = 9360.0;  // per battery (AA cell)
  PipelinePlan pipeline = mfcc_plan();
  BitCount n_tx_bits = 43904;       // uplink information bits per window
  BitCount n_rx_bits = 976;         // downlink information bits per window
  LinkConfig link;
  CodingConfig coding;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario default_scenario();

// Throws ConfigError on a broken invariant; returns warnings.
std::vector<std::string> validate(const Scenario& scenario);

struct EnergyBreakdown {
  SensingEnergy sensing;
  ProcessingEnergy processing;
  Joule tx = 0.0;  // N_T * E_T
  Joule rx = 0.0;  // N_R * E_R
  Joule total = 0.0;

  LinkEnergy link;
  PipelineCost pipeline;
  std::vector<std::string> warnings;

  Joule layer_sum() const { return sensing.total + processing.total + tx + rx; }
};

// Energy of one active window. Sub-model errors propagate as thrown.
EnergyBreakdown node_energy(const Scenario& scenario, const HardwareProfile& profile);

// Seconds until n_b * B is spent at duty cycle delta.
// DivergenceError when the node spends nothing.
Second lifetime(const Scenario& scenario, const HardwareProfile& profile);
Second lifetime(const Scenario& scenario, Joule node_energy);

}  // namespace wasnem
