#include "wasnem/hwcost.hpp"

#include <cmath>

#include "wasnem/errors.hpp"

namespace wasnem {

std::string_view op_class_name(OpClass op) {
  switch (op) {
    case OpClass::mac: return "mac";
    case OpClass::add: return "add";
    case OpClass::mul: return "mul";
    case OpClass::div: return "div";
    case OpClass::cmp: return "cmp";
    case OpClass::exp: return "exp";
    case OpClass::log: return "log";
  }
  return "?";
}

std::optional<OpClass> parse_op_class(std::string_view name) {
  for (OpClass op : kAllOpClasses) {
    if (op_class_name(op) == name) return op;
  }
  return std::nullopt;
}

double cycles(const OpCounts& counts, const OpCycleCosts& costs) {
  double total = 0.0;
  for (OpClass op : kAllOpClasses) {
    total += static_cast<double>(counts[op]) * static_cast<double>(costs[op]);
  }
  return total;
}

CostReport& CostReport::operator+=(const CostReport& other) {
  op_counts += other.op_counts;
  for (const auto& [level, bits] : other.mem_accesses) mem_accesses[level] += bits;
  for (const auto& [level, bits] : other.mem_stored) mem_stored[level] += bits;
  if (!other.label.empty()) {
    label = label.empty() ? other.label : label + "+" + other.label;
  }
  return *this;
}

CostReport CostReport::repeated(std::uint64_t factor) const {
  CostReport out = *this;
  for (auto& n : out.op_counts.values) n *= factor;
  for (auto& [level, bits] : out.mem_accesses) bits *= factor;
  return out;
}

CostReport CostReport::placed_on(const std::string& level) const {
  CostReport out;
  out.op_counts = op_counts;
  out.label = label;
  const BitCount accesses = total_accesses();
  const BitCount stored = total_stored();
  if (accesses > 0) out.mem_accesses[level] = accesses;
  if (stored > 0) out.mem_stored[level] = stored;
  return out;
}

BitCount CostReport::total_accesses() const {
  BitCount total = 0;
  for (const auto& [level, bits] : mem_accesses) total += bits;
  return total;
}

BitCount CostReport::total_stored() const {
  BitCount total = 0;
  for (const auto& [level, bits] : mem_stored) total += bits;
  return total;
}

CostReport report_sum(std::span<const CostReport> reports) {
  CostReport sum;
  for (const auto& r : reports) sum += r;
  return sum;
}

ProcessingEnergy energy_of(const CostReport& report, const ProcessingProfile& profile,
                           Second delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("measurement window must be a finite duration >= 0");
  }
  auto level_of = [&](const std::string& name) -> const MemoryLevel& {
    const MemoryLevel* level = profile.find_level(name);
    if (level == nullptr) {
      throw ConfigError("processing", "memory_level",
                        "unknown memory level '" + name + "'");
    }
    return *level;
  };

  ProcessingEnergy e;
  e.e_ops = profile.energy_per_clock_cycle() * cycles(report.op_counts, profile.op_cycle_costs);
  for (const auto& [name, bits] : report.mem_accesses) {
    e.e_mem_access += level_of(name).access_energy_per_bit * static_cast<double>(bits);
  }
  double leak_power = 0.0;
  for (const auto& [name, bits] : report.mem_stored) {
    leak_power += level_of(name).leakage_power_per_bit * static_cast<double>(bits);
  }
  e.e_mem_leak = delta * leak_power;
  e.total = e.e_ops + e.e_mem_access + e.e_mem_leak;
  return e;
}

}  // namespace wasnem
