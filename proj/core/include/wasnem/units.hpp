#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>

// Every quantity in the model is held in SI base units. The aliases document
// the unit at the declaration site; conversion from scaled suffixes (mW, fJ,
// MBaud, dB, ...) happens once, at load time.

namespace wasnem {

using Second = double;
using Joule = double;
using JoulePerBit = double;
using Watt = double;
using WattPerBit = double;
using WattPerHertz = double;
using Hertz = double;
using Baud = double;
using Volt = double;
using Ampere = double;
using Farad = double;
using Kelvin = double;
using Meter = double;
using BitCount = std::uint64_t;

namespace constants {
inline constexpr double boltzmann = 1.380649e-23;        // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double speed_of_light = 299792458.0;    // m/s
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

double db_to_linear(double db);
double linear_to_db(double ratio);

// Physical dimension of a profile/scenario field. Selects the accepted unit
// suffixes when parsing "<number> <unit>" strings.
enum class Dimension {
  dimensionless,
  count,
  bits,
  time,
  energy,
  power,
  frequency,
  symbol_rate,
  voltage,
  current,
  capacitance,
  temperature,
  length,
  ratio_db,  // stored linear; bare numbers are read as dB
  power_spectral_density,
};

std::string_view dimension_name(Dimension d);

// Parses "<number>[ ]<unit>" for the given dimension and returns the SI value.
// An empty unit means the SI base unit (dB for ratio_db). Throws
// std::invalid_argument when the suffix does not belong to the dimension.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace wasnem
