#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wasnem/io.hpp"
#include "wasnem/node.hpp"

namespace wasnem::cli {

// One evaluated scenario.
struct Evaluation {
  ModelInputs inputs;
  EnergyBreakdown breakdown;
  Second lifetime_s = 0.0;  // +inf when the node spends nothing
};

Evaluation evaluate(const InputDocs& docs);

struct Metric {
  std::string_view name;
  std::string_view unit;
  std::string_view description;
  double (*get)(const Evaluation&);
};

const std::vector<Metric>& metric_registry();
const Metric* find_metric(std::string_view name);
// ConfigError("cli", "metrics", ...) listing valid names on an unknown one.
std::vector<const Metric*> parse_metrics(std::string_view comma_list);

// 9 significant digits, '.' separator, independent of the locale.
std::string format_number(double v);
// "1.000 s (1.157e-05 days, 3.169e-08 years)"
std::string format_lifetime(Second s);

struct CommonOptions {
  std::string profile_path;
  std::string scenario_path;
  std::vector<std::string> overrides;  // "key=value"
};

InputDocs prepare_inputs(const CommonOptions& opts);

struct SweepOptions {
  std::string axis;
  std::string values;  // "a,b,c"
  std::string range;   // "from:to:steps[:log]"
  std::string metrics;
  std::string out_path;  // empty: stdout
};

struct SweepPoint {
  double axis_value;
  std::string override_value;
};

std::vector<SweepPoint> sweep_points(const SweepOptions& opts);

// Rows in point order; points are evaluated concurrently. A point whose link
// never delivers (q_x = 1) gets "nan" metrics and a note on `diagnostics`.
std::string sweep_csv(const InputDocs& base, const SweepOptions& opts,
                      std::ostream* diagnostics = nullptr);

struct ValidateOptions {
  std::uint64_t seed = 20240611;
  std::uint64_t episodes = 1'000'000;
  double pf_bias = 0.0;  // added to P_f in the simulator only (negative control)
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> retransmission_checks(const ValidateOptions& opts);
std::vector<CheckResult> op_count_checks();
std::vector<CheckResult> ber_checks();
std::string validation_report(const std::vector<CheckResult>& checks);

// Subcommands. Return the process exit code: 0 ok, 1 configuration error
// (one "layer:field:message" line on err), 2 validation failure.
int cmd_evaluate(const CommonOptions& opts, const std::string& metrics,
                 const std::string& out_path, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opts, const SweepOptions& sweep, std::ostream& out,
              std::ostream& err);
int cmd_lifetime(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace wasnem::cli
