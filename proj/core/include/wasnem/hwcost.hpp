#pragma once

#include <map>
#include <span>
#include <string>

#include "wasnem/ops.hpp"
#include "wasnem/params.hpp"
#include "wasnem/units.hpp"

namespace wasnem {

// Tally produced by every processing block: classified arithmetic operations,
// bits moved to/from each memory level and bits held there for the window.
struct CostReport {
  OpCounts op_counts{};
  std::map<std::string, BitCount> mem_accesses;
  std::map<std::string, BitCount> mem_stored;
  std::string label;

  CostReport& operator+=(const CostReport& other);

  // Ops and accesses multiplied by `factor`; storage is left as is (buffers
  // are reused between repetitions).
  CostReport repeated(std::uint64_t factor) const;

  // All traffic and storage moved onto `level`.
  CostReport placed_on(const std::string& level) const;

  BitCount total_accesses() const;
  BitCount total_stored() const;

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

CostReport report_sum(std::span<const CostReport> reports);

struct ProcessingEnergy {
  Joule e_ops = 0.0;
  Joule e_mem_access = 0.0;
  Joule e_mem_leak = 0.0;
  Joule total = 0.0;
};

// E_P = E_cc * sum_j c_j n_j  +  sum_k E_ma,k M_a,k  +  delta * sum_k P_ms,k M_s,k.
// Throws ConfigError when the report names a memory level the profile lacks.
ProcessingEnergy energy_of(const CostReport& report, const ProcessingProfile& profile,
                           Second delta);

}  // namespace wasnem
