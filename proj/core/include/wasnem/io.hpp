#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <string_view>

#include "wasnem/node.hpp"
#include "wasnem/params.hpp"

// Profile and scenario files. Loading is strict: unknown keys, wrong types
// and mismatched units raise ConfigError("layer", "field.path", ...).
// Absent keys keep their defaults. Quantities are SI numbers or
// "<number> <unit>" strings; ratio fields (noise figure, margins, SNR) read a
// bare number as dB and also accept "dB" and "lin" suffixes.

namespace wasnem {

using Json = nlohmann::ordered_json;

HardwareProfile profile_from_json(const Json& doc);
Scenario scenario_from_json(const Json& doc);

// Complete documents: every field present, so any parameter can be addressed
// by a dotted path. Parsing the output returns an equal object.
Json to_json(const HardwareProfile& profile);
Json to_json(const Scenario& scenario);

// Reads a JSON file; ConfigError("file", path, ...) on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

// Read, parse and validate one file.
HardwareProfile load_profile(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

// "key=value" from the command line.
struct Override {
  std::string path;
  std::string value;
};
Override parse_override(std::string_view text);

// The two documents a run is built from. Paths whose first segment is
// sensing, processing or comm address the profile; all others the scenario.
struct InputDocs {
  Json profile;
  Json scenario;
};

// Full documents from optional files (empty path: defaults).
InputDocs load_inputs(const std::filesystem::path& profile_path,
                      const std::filesystem::path& scenario_path);

// Sets the leaf at `dotted` (numeric segments index arrays). The value is
// parsed as JSON and falls back to a plain string, so "20", "10 mW" and
// "block" all work. Setting pa_class or mic_kind re-derives the parameters
// that follow from it. ConfigError when the path does not exist.
void apply_override(InputDocs& docs, std::string_view dotted, std::string_view value);

// True when the leaf at `dotted` holds a number, a quantity string or null
// (an unset optional number).
bool is_numeric_leaf(const InputDocs& docs, std::string_view dotted);

struct ModelInputs {
  HardwareProfile profile;
  Scenario scenario;
};

// Parses and validates both documents.
ModelInputs resolve(const InputDocs& docs);

}  // namespace wasnem
