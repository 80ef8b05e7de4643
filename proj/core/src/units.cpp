#include "wasnem/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wasnem/errors.hpp"

namespace wasnem {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

ConfigError::ConfigError(std::string layer, std::string field, const std::string& message)
    : std::runtime_error(layer + ":" + field + ":" + message),
      layer_(std::move(layer)),
      field_(std::move(field)),
      message_(message) {}

namespace {

struct UnitScale {
  std::string_view suffix;
  double scale;
};

// "u", micro sign (U+00B5) and greek mu (U+03BC) are all accepted for micro.
constexpr std::array kEnergy{
    UnitScale{"J", 1.0},     UnitScale{"mJ", 1e-3},   UnitScale{"uJ", 1e-6},
    UnitScale{"µJ", 1e-6}, UnitScale{"μJ", 1e-6}, UnitScale{"nJ", 1e-9},
    UnitScale{"pJ", 1e-12},  UnitScale{"fJ", 1e-15},  UnitScale{"kJ", 1e3},
    UnitScale{"Wh", 3600.0}, UnitScale{"mWh", 3.6}};
constexpr std::array kPower{
    UnitScale{"W", 1.0},    UnitScale{"mW", 1e-3},   UnitScale{"uW", 1e-6},
    UnitScale{"µW", 1e-6}, UnitScale{"μW", 1e-6}, UnitScale{"nW", 1e-9},
    UnitScale{"pW", 1e-12}, UnitScale{"fW", 1e-15}};
constexpr std::array kFrequency{UnitScale{"Hz", 1.0}, UnitScale{"kHz", 1e3},
                                UnitScale{"MHz", 1e6}, UnitScale{"GHz", 1e9}};
constexpr std::array kSymbolRate{UnitScale{"Bd", 1.0},     UnitScale{"kBd", 1e3},
                                 UnitScale{"MBd", 1e6},    UnitScale{"Baud", 1.0},
                                 UnitScale{"kBaud", 1e3},  UnitScale{"MBaud", 1e6}};
constexpr std::array kVoltage{UnitScale{"V", 1.0}, UnitScale{"mV", 1e-3},
                              UnitScale{"uV", 1e-6}, UnitScale{"µV", 1e-6},
                              UnitScale{"μV", 1e-6}, UnitScale{"nV", 1e-9}};
constexpr std::array kCurrent{UnitScale{"A", 1.0}, UnitScale{"mA", 1e-3},
                              UnitScale{"uA", 1e-6}, UnitScale{"µA", 1e-6},
                              UnitScale{"μA", 1e-6}, UnitScale{"nA", 1e-9}};
constexpr std::array kCapacitance{UnitScale{"F", 1.0},   UnitScale{"uF", 1e-6},
                                  UnitScale{"nF", 1e-9}, UnitScale{"pF", 1e-12},
                                  UnitScale{"fF", 1e-15}};
constexpr std::array kTime{UnitScale{"s", 1.0}, UnitScale{"ms", 1e-3}, UnitScale{"us", 1e-6},
                           UnitScale{"min", 60.0}, UnitScale{"h", 3600.0},
                           UnitScale{"d", 86400.0}};
constexpr std::array kLength{UnitScale{"m", 1.0}, UnitScale{"cm", 1e-2}, UnitScale{"km", 1e3}};
constexpr std::array kBits{UnitScale{"bit", 1.0}, UnitScale{"bits", 1.0},
                           UnitScale{"byte", 8.0}, UnitScale{"bytes", 8.0}};
constexpr std::array kTemperature{UnitScale{"K", 1.0}};
constexpr std::array kPsd{UnitScale{"W/Hz", 1.0}};

template <std::size_t N>
bool lookup(const std::array<UnitScale, N>& table, std::string_view suffix, double& scale) {
  for (const auto& u : table) {
    if (u.suffix == suffix) {
      scale = u.scale;
      return true;
    }
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::count: return "count";
    case Dimension::bits: return "bits";
    case Dimension::time: return "time";
    case Dimension::energy: return "energy";
    case Dimension::power: return "power";
    case Dimension::frequency: return "frequency";
    case Dimension::symbol_rate: return "symbol rate";
    case Dimension::voltage: return "voltage";
    case Dimension::current: return "current";
    case Dimension::capacitance: return "capacitance";
    case Dimension::temperature: return "temperature";
    case Dimension::length: return "length";
    case Dimension::ratio_db: return "ratio";
    case Dimension::power_spectral_density: return "power spectral density";
  }
  return "unknown";
}

double parse_quantity(std::string_view text, Dimension dim) {
  text = trim(text);
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin) {
    throw std::invalid_argument("expected '<number> <unit>', got '" + std::string(text) + "'");
  }
  const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  if (suffix.empty()) {
    return dim == Dimension::ratio_db ? db_to_linear(value) : value;
  }

  double scale = 1.0;
  bool ok = false;
  // per-bit and per-conversion tables: "100 fJ/bit", "500 fJ/conv"
  std::string_view unit = suffix;
  if (dim == Dimension::energy || dim == Dimension::power) {
    for (std::string_view per : {"/bit", "/conv"}) {
      if (unit.size() > per.size() && unit.substr(unit.size() - per.size()) == per) {
        unit.remove_suffix(per.size());
        break;
      }
    }
  }
  switch (dim) {
    case Dimension::energy: ok = lookup(kEnergy, unit, scale); break;
    case Dimension::power: ok = lookup(kPower, unit, scale); break;
    case Dimension::frequency: ok = lookup(kFrequency, suffix, scale); break;
    case Dimension::symbol_rate: ok = lookup(kSymbolRate, suffix, scale); break;
    case Dimension::voltage: ok = lookup(kVoltage, suffix, scale); break;
    case Dimension::current: ok = lookup(kCurrent, suffix, scale); break;
    case Dimension::capacitance: ok = lookup(kCapacitance, suffix, scale); break;
    case Dimension::time: ok = lookup(kTime, suffix, scale); break;
    case Dimension::length: ok = lookup(kLength, suffix, scale); break;
    case Dimension::bits: ok = lookup(kBits, suffix, scale); break;
    case Dimension::temperature: ok = lookup(kTemperature, suffix, scale); break;
    case Dimension::power_spectral_density:
      if (suffix == "dBm/Hz") return db_to_linear(value) * 1e-3;
      ok = lookup(kPsd, suffix, scale);
      break;
    case Dimension::ratio_db:
      if (suffix == "dB") return db_to_linear(value);
      if (suffix == "lin") return value;
      break;
    case Dimension::dimensionless:
    case Dimension::count:
      break;
  }
  if (!ok) {
    throw std::invalid_argument("unit '" + std::string(suffix) + "' is not a " +
                                std::string(dimension_name(dim)) + " unit");
  }
  return value * scale;
}

}  // namespace wasnem
