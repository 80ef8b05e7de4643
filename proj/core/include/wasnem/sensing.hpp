#pragma once

#include "wasnem/params.hpp"
#include "wasnem/units.hpp"

namespace wasnem {

// Acoustic front-end energy over one measurement window.
struct SensingEnergy {
  Joule e_mic = 0.0;
  Joule e_lna = 0.0;
  Joule e_adc = 0.0;
  Joule total = 0.0;
};

// 0 for a passive microphone, delta * P_mic,act for an active one.
Joule mic_energy(const SensingProfile& profile, Second delta);

// Bandwidth seen by the LNA noise budget: the Nyquist band f_s / 2.
Hertz lna_bandwidth(const SensingProfile& profile);

// LNA bias current set by the noise target through the noise efficiency factor:
//   I = (pi * u_T * 4kT * W / 2) * (NEF / v_n)^2,   u_T = kT / q_e.
Ampere lna_current(const SensingProfile& profile);

// P = 2^n * f_s * FOM.
Watt adc_power(unsigned n_bits, Hertz f_s, double fom);

SensingEnergy sensing_energy(const SensingProfile& profile, Second delta);

}  // namespace wasnem
