#include "wasnem/sensing.hpp"

#include <cmath>

#include "wasnem/errors.hpp"

namespace wasnem {

namespace {
void check_window(Second delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("measurement window must be a finite duration >= 0");
  }
}
}  // namespace

Joule mic_energy(const SensingProfile& profile, Second delta) {
  check_window(delta);
  return profile.mic_kind == MicKind::active ? delta * profile.p_mic_active : 0.0;
}

Hertz lna_bandwidth(const SensingProfile& profile) { return profile.f_s_mic / 2.0; }

Ampere lna_current(const SensingProfile& profile) {
  if (!(profile.v_noise_in_rms > 0.0)) {
    throw DomainError("LNA input noise voltage must be positive");
  }
  const double kT = constants::boltzmann * profile.temperature_K;
  const double thermal_voltage = kT / constants::elementary_charge;
  const double ratio = profile.nef / profile.v_noise_in_rms;
  return constants::pi * thermal_voltage * 4.0 * kT * lna_bandwidth(profile) / 2.0 * ratio * ratio;
}

Watt adc_power(unsigned n_bits, Hertz f_s, double fom) {
  return std::ldexp(1.0, static_cast<int>(n_bits)) * f_s * fom;
}

SensingEnergy sensing_energy(const SensingProfile& profile, Second delta) {
  check_window(delta);
  SensingEnergy e;
  e.e_mic = mic_energy(profile, delta);
  e.e_lna = lna_current(profile) * profile.v_dd_lna * delta;
  e.e_adc = adc_power(profile.n_adc_bits, profile.f_s_mic, profile.adc_fom) * delta;
  e.total = e.e_mic + e.e_lna + e.e_adc;
  return e;
}

}  // namespace wasnem
