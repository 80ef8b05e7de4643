#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wasnem/ops.hpp"
#include "wasnem/units.hpp"

// Hardware constants of the node. In-class initialisers are the default
// parameter tables of the reference model; load_profile() overlays files on
// top of them field by field.

namespace wasnem {

enum class MicKind { passive, active };
enum class ProcessorClass { gp_proc, gp_dsp };
enum class PaClass { A, B };

// Typical LNA input-referred noise for each microphone kind. The source table
// prints these with a "uW" unit; a noise voltage is meant.
Volt typical_input_noise(MicKind kind);

struct SensingProfile {
  Kelvin temperature_K = 290.0;
  Watt p_mic_active = 10e-3;
  Volt v_dd_lna = 1.5;
  double nef = 6.0;
  Volt v_noise_in_rms = typical_input_noise(MicKind::active);
  double adc_fom = 500e-15;  // joule per conversion step
  Hertz f_s_mic = 16e3;
  unsigned n_adc_bits = 12;
  MicKind mic_kind = MicKind::active;

  friend bool operator==(const SensingProfile&, const SensingProfile&) = default;
};

struct MemoryLevel {
  std::string name;
  JoulePerBit access_energy_per_bit = 0.0;
  WattPerBit leakage_power_per_bit = 0.0;
  BitCount capacity_bits = 0;  // 0 = unbounded

  friend bool operator==(const MemoryLevel&, const MemoryLevel&) = default;
};

std::vector<MemoryLevel> default_memory_levels();

struct ProcessingProfile {
  ProcessorClass processor_class = ProcessorClass::gp_proc;
  // Energy per clock cycle of each processor class (the tables' "energy per
  // operation"; a c_j-cycle operation costs c_j times this).
  Joule energy_per_cycle_gp_proc = 500e-12;
  Joule energy_per_cycle_gp_dsp = 100e-12;
  OpCycleCosts op_cycle_costs{{2, 1, 1, 8, 1, 2, 25}};
  std::vector<MemoryLevel> memory_levels = default_memory_levels();
  unsigned word_size_bits = 32;

  Joule energy_per_clock_cycle() const;
  const MemoryLevel* find_level(std::string_view name) const;

  friend bool operator==(const ProcessingProfile&, const ProcessingProfile&) = default;
};

// Binary-weighted current-steering DAC.
struct DacModel {
  unsigned n_bits = 10;
  Hertz f_s_dac = 4e6;
  Volt v_dd = 3.0;
  Ampere i_unit = 10e-6;
  Farad c_parasitic = 1e-12;
  double beta_correction = 1.0;

  friend bool operator==(const DacModel&, const DacModel&) = default;
};

struct RxAdc {
  unsigned n_bits = 10;
  Hertz f_s = 4e6;
  double fom = 500e-15;

  friend bool operator==(const RxAdc&, const RxAdc&) = default;
};

struct PaParameters {
  double eta_max;
  double beta;
};

PaParameters pa_class_parameters(PaClass pa_class);

struct CommProfile {
  Joule e_startup = 94e-6;
  Watt p_filter = 1e-3;
  Watt p_mixer = 1e-3;
  Watt p_lna_rx = 3e-3;
  Watt p_vga = 5e-3;
  Watt p_lo = 22.5e-3;
  DacModel dac{};
  RxAdc adc_rx{};
  PaClass pa_class = PaClass::B;
  double eta_max = 0.785;
  double beta = 0.5;
  double extra_backoff = 1.0;  // linear; 0 dB
  double g_t = 1.8;
  double g_r = 1.8;
  Hertz f_c = 2.4e9;
  Hertz bandwidth_W = 1e6;
  Baud symbol_rate_Rs = 0.125e6;
  double noise_figure = db_to_linear(16.0);  // linear
  double link_margin = db_to_linear(20.0);   // linear
  WattPerHertz n0 = db_to_linear(-174.0) * 1e-3;

  friend bool operator==(const CommProfile&, const CommProfile&) = default;
};

struct HardwareProfile {
  SensingProfile sensing{};
  ProcessingProfile processing{};
  CommProfile comm{};

  friend bool operator==(const HardwareProfile&, const HardwareProfile&) = default;
};

HardwareProfile default_profile();

// Throws ConfigError naming the first field that breaks an invariant.
void validate(const HardwareProfile& profile);

std::string_view to_string(MicKind kind);
std::string_view to_string(ProcessorClass pc);
std::string_view to_string(PaClass pa);

}  // namespace wasnem
