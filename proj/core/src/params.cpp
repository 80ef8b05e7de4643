#include "wasnem/params.hpp"

#include <cmath>
#include <set>

#include "wasnem/errors.hpp"

namespace wasnem {

Volt typical_input_noise(MicKind kind) {
  return kind == MicKind::passive ? 10e-6 : 100e-6;
}

std::vector<MemoryLevel> default_memory_levels() {
  return {
      {"onchip_sram", 100e-15, 50e-12, 0},
      {"offchip_sram", 100e-12, 10e-12, 0},
      {"offchip_dram", 100e-12, 75e-12, 0},
  };
}

Joule ProcessingProfile::energy_per_clock_cycle() const {
  return processor_class == ProcessorClass::gp_dsp ? energy_per_cycle_gp_dsp
                                                   : energy_per_cycle_gp_proc;
}

const MemoryLevel* ProcessingProfile::find_level(std::string_view name) const {
  for (const auto& level : memory_levels) {
    if (level.name == name) return &level;
  }
  return nullptr;
}

PaParameters pa_class_parameters(PaClass pa_class) {
  switch (pa_class) {
    case PaClass::A: return {0.5, 1.0};
    case PaClass::B: return {0.785, 0.5};
  }
  return {0.785, 0.5};
}

HardwareProfile default_profile() { return HardwareProfile{}; }

namespace {

void require(bool ok, const char* layer, const std::string& field, const char* message) {
  if (!ok) throw ConfigError(layer, field, message);
}

void positive(double v, const char* layer, const std::string& field) {
  require(std::isfinite(v) && v > 0.0, layer, field, "must be strictly positive");
}

void non_negative(double v, const char* layer, const std::string& field) {
  require(std::isfinite(v) && v >= 0.0, layer, field, "must be non-negative");
}

}  // namespace

void validate(const HardwareProfile& profile) {
  const auto& s = profile.sensing;
  positive(s.temperature_K, "sensing", "temperature_K");
  positive(s.p_mic_active, "sensing", "p_mic_active");
  positive(s.v_dd_lna, "sensing", "v_dd_lna");
  positive(s.v_noise_in_rms, "sensing", "v_noise_in_rms");
  positive(s.adc_fom, "sensing", "adc_fom");
  positive(s.f_s_mic, "sensing", "f_s_mic");
  require(std::isfinite(s.nef) && s.nef >= 1.0, "sensing", "nef", "must be >= 1");
  require(s.n_adc_bits >= 1 && s.n_adc_bits <= 32, "sensing", "n_adc_bits",
          "must be in [1, 32]");

  const auto& p = profile.processing;
  positive(p.energy_per_cycle_gp_proc, "processing", "energy_per_cycle_gp_proc");
  positive(p.energy_per_cycle_gp_dsp, "processing", "energy_per_cycle_gp_dsp");
  for (OpClass op : kAllOpClasses) {
    require(p.op_cycle_costs[op] >= 1, "processing",
            "op_cycle_costs." + std::string(op_class_name(op)), "must be >= 1 cycle");
  }
  require(!p.memory_levels.empty(), "processing", "memory_levels",
          "at least one memory level is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < p.memory_levels.size(); ++i) {
    const auto& level = p.memory_levels[i];
    const std::string prefix = "memory_levels." + std::to_string(i) + ".";
    require(!level.name.empty(), "processing", prefix + "name", "must not be empty");
    require(names.insert(level.name).second, "processing", prefix + "name",
            "duplicate memory level name");
    non_negative(level.access_energy_per_bit, "processing", prefix + "access_energy_per_bit");
    non_negative(level.leakage_power_per_bit, "processing", prefix + "leakage_power_per_bit");
  }
  require(p.word_size_bits > 0, "processing", "word_size_bits", "must be > 0");

  const auto& c = profile.comm;
  non_negative(c.e_startup, "comm", "e_startup");
  non_negative(c.p_filter, "comm", "p_filter");
  non_negative(c.p_mixer, "comm", "p_mixer");
  non_negative(c.p_lna_rx, "comm", "p_lna_rx");
  non_negative(c.p_vga, "comm", "p_vga");
  non_negative(c.p_lo, "comm", "p_lo");
  require(c.dac.n_bits >= 1 && c.dac.n_bits <= 32, "comm", "dac.n_bits", "must be in [1, 32]");
  positive(c.dac.f_s_dac, "comm", "dac.f_s_dac");
  positive(c.dac.v_dd, "comm", "dac.v_dd");
  positive(c.dac.i_unit, "comm", "dac.i_unit");
  positive(c.dac.c_parasitic, "comm", "dac.c_parasitic");
  positive(c.dac.beta_correction, "comm", "dac.beta_correction");
  require(c.adc_rx.n_bits >= 1 && c.adc_rx.n_bits <= 32, "comm", "adc_rx.n_bits",
          "must be in [1, 32]");
  positive(c.adc_rx.f_s, "comm", "adc_rx.f_s");
  positive(c.adc_rx.fom, "comm", "adc_rx.fom");
  require(std::isfinite(c.eta_max) && c.eta_max > 0.0 && c.eta_max <= 1.0, "comm", "eta_max",
          "must be in (0, 1]");
  positive(c.beta, "comm", "beta");
  positive(c.extra_backoff, "comm", "extra_backoff_S_dB");
  positive(c.g_t, "comm", "g_t");
  positive(c.g_r, "comm", "g_r");
  positive(c.f_c, "comm", "f_c");
  positive(c.bandwidth_W, "comm", "bandwidth_W");
  positive(c.symbol_rate_Rs, "comm", "symbol_rate_Rs");
  positive(c.noise_figure, "comm", "noise_figure_dB");
  positive(c.link_margin, "comm", "link_margin_dB");
  positive(c.n0, "comm", "n0");
}

std::string_view to_string(MicKind kind) {
  return kind == MicKind::passive ? "passive" : "active";
}

std::string_view to_string(ProcessorClass pc) {
  return pc == ProcessorClass::gp_dsp ? "gp_dsp" : "gp_proc";
}

std::string_view to_string(PaClass pa) { return pa == PaClass::A ? "A" : "B"; }

}  // namespace wasnem
