#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "wasnem/errors.hpp"

namespace wasnem::cli {

Evaluation evaluate(const InputDocs& docs) {
  Evaluation e{resolve(docs), {}, 0.0};
  e.breakdown = node_energy(e.inputs.scenario, e.inputs.profile);
  e.lifetime_s = e.breakdown.total > 0.0 ? lifetime(e.inputs.scenario, e.breakdown.total)
                                         : std::numeric_limits<double>::infinity();
  return e;
}

const std::vector<Metric>& metric_registry() {
  static const std::vector<Metric> registry = {
      {"total_energy", "J", "node energy per active window",
       [](const Evaluation& e) { return e.breakdown.total; }},
      {"sensing_energy", "J", "sensing layer",
       [](const Evaluation& e) { return e.breakdown.sensing.total; }},
      {"mic_energy", "J", "microphone",
       [](const Evaluation& e) { return e.breakdown.sensing.e_mic; }},
      {"lna_energy", "J", "low-noise amplifier",
       [](const Evaluation& e) { return e.breakdown.sensing.e_lna; }},
      {"adc_energy", "J", "audio ADC",
       [](const Evaluation& e) { return e.breakdown.sensing.e_adc; }},
      {"processing_energy", "J", "processing layer",
       [](const Evaluation& e) { return e.breakdown.processing.total; }},
      {"ops_energy", "J", "arithmetic operations",
       [](const Evaluation& e) { return e.breakdown.processing.e_ops; }},
      {"mem_access_energy", "J", "memory accesses",
       [](const Evaluation& e) { return e.breakdown.processing.e_mem_access; }},
      {"mem_leak_energy", "J", "memory leakage",
       [](const Evaluation& e) { return e.breakdown.processing.e_mem_leak; }},
      {"tx_energy", "J", "uplink traffic, N_T times energy per transmitted bit",
       [](const Evaluation& e) { return e.breakdown.tx; }},
      {"rx_energy", "J", "downlink traffic, N_R times energy per received bit",
       [](const Evaluation& e) { return e.breakdown.rx; }},
      {"energy_per_tx_bit", "J/bit", "average energy per delivered uplink bit",
       [](const Evaluation& e) { return e.breakdown.link.transmit.total; }},
      {"tx_startup_per_bit", "J/bit", "uplink: transceiver start-up",
       [](const Evaluation& e) { return e.breakdown.link.transmit.startup; }},
      {"tx_coding_per_bit", "J/bit", "uplink: encoding",
       [](const Evaluation& e) { return e.breakdown.link.transmit.coding; }},
      {"tx_electronics_tx_per_bit", "J/bit", "uplink: transmitter electronics",
       [](const Evaluation& e) { return e.breakdown.link.transmit.electronics_tx; }},
      {"tx_electronics_rx_per_bit", "J/bit", "uplink: feedback receiver electronics",
       [](const Evaluation& e) { return e.breakdown.link.transmit.electronics_rx; }},
      {"tx_pa_forward_per_bit", "J/bit", "uplink: power amplifier, data frames",
       [](const Evaluation& e) { return e.breakdown.link.transmit.pa_forward; }},
      {"energy_per_rx_bit", "J/bit", "average energy per delivered downlink bit",
       [](const Evaluation& e) { return e.breakdown.link.receive.total; }},
      {"rx_startup_per_bit", "J/bit", "downlink: transceiver start-up",
       [](const Evaluation& e) { return e.breakdown.link.receive.startup; }},
      {"rx_coding_per_bit", "J/bit", "downlink: decoding",
       [](const Evaluation& e) { return e.breakdown.link.receive.coding; }},
      {"rx_electronics_tx_per_bit", "J/bit", "downlink: feedback transmitter electronics",
       [](const Evaluation& e) { return e.breakdown.link.receive.electronics_tx; }},
      {"rx_electronics_rx_per_bit", "J/bit", "downlink: receiver electronics",
       [](const Evaluation& e) { return e.breakdown.link.receive.electronics_rx; }},
      {"rx_pa_feedback_per_bit", "J/bit", "downlink: power amplifier, feedback frames",
       [](const Evaluation& e) { return e.breakdown.link.receive.pa_feedback; }},
      {"lifetime", "s", "battery lifetime",
       [](const Evaluation& e) { return e.lifetime_s; }},
      {"phi", "trials", "uplink: expected trials per delivered frame",
       [](const Evaluation& e) { return e.breakdown.link.uplink_stats.phi; }},
      {"q_x", "", "uplink: outage probability",
       [](const Evaluation& e) { return e.breakdown.link.uplink_stats.q_x; }},
      {"mean_outages", "", "uplink: expected outages per delivered frame",
       [](const Evaluation& e) { return e.breakdown.link.uplink_stats.mean_outages; }},
      {"mean_trials_given_success", "trials", "uplink: trials of the successful attempt",
       [](const Evaluation& e) { return e.breakdown.link.uplink_stats.mean_trials_given_success; }},
      {"phi_down", "trials", "downlink: expected trials per delivered frame",
       [](const Evaluation& e) { return e.breakdown.link.downlink_stats.phi; }},
      {"q_x_down", "", "downlink: outage probability",
       [](const Evaluation& e) { return e.breakdown.link.downlink_stats.q_x; }},
      {"code_rate", "", "uplink code rate",
       [](const Evaluation& e) { return e.breakdown.link.uplink_coding.code_rate; }},
      {"frames_per_window", "", "DSP frames per active window",
       [](const Evaluation& e) { return static_cast<double>(e.breakdown.pipeline.frames); }},
      {"pipeline_output_bits", "bits", "pipeline output per window",
       [](const Evaluation& e) { return static_cast<double>(e.breakdown.pipeline.output_bits); }},
  };
  return registry;
}

const Metric* find_metric(std::string_view name) {
  for (const auto& m : metric_registry()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(sep, start);
    const auto end = pos == std::string_view::npos ? text.size() : pos;
    std::string part(text.substr(start, end - start));
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    parts.push_back(part);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> leading_number(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr == text.data()) return std::nullopt;
  return v;
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fixed3(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  return ec == std::errc{} ? std::string(buf, end) : format_number(v);
}

std::string sci4(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
  return std::string(buf, end);
}

const char* kDefaultMetrics =
    "total_energy,sensing_energy,processing_energy,tx_energy,rx_energy,energy_per_tx_bit,"
    "energy_per_rx_bit,lifetime,phi,q_x";

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
  } catch (const DivergenceError& e) {
    err << "model:divergence:" << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "model:domain:" << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "cli:error:" << e.what() << '\n';
  }
  return 1;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cli", "out", "cannot write '" + path + "'");
  f << text;
}

}  // namespace

std::vector<const Metric*> parse_metrics(std::string_view comma_list) {
  std::vector<const Metric*> out;
  for (const auto& name : split(comma_list, ',')) {
    const Metric* m = find_metric(name);
    if (m == nullptr) {
      std::string valid;
      for (const auto& r : metric_registry()) {
        valid += (valid.empty() ? "" : " ") + std::string(r.name);
      }
      throw ConfigError("cli", "metrics", "unknown metric '" + name + "'; valid: " + valid);
    }
    out.push_back(m);
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, end);
}

std::string format_lifetime(Second s) {
  if (std::isinf(s)) return "inf s";
  return fixed3(s) + " s (" + sci4(s / 86400.0) + " days, " + sci4(s / (365.25 * 86400.0)) +
         " years)";
}

InputDocs prepare_inputs(const CommonOptions& opts) {
  InputDocs docs = load_inputs(opts.profile_path, opts.scenario_path);
  for (const auto& text : opts.overrides) {
    const Override o = parse_override(text);
    apply_override(docs, o.path, o.value);
  }
  return docs;
}

std::vector<SweepPoint> sweep_points(const SweepOptions& opts) {
  if (opts.values.empty() == opts.range.empty()) {
    throw ConfigError("cli", "sweep-values", "give exactly one of --sweep-values or --sweep-range");
  }
  std::vector<SweepPoint> points;
  if (!opts.values.empty()) {
    for (const auto& token : split(opts.values, ',')) {
      const auto v = leading_number(token);
      if (!v) throw ConfigError("cli", "sweep-values", "'" + token + "' is not a number");
      points.push_back({*v, token});
    }
    return points;
  }

  const auto parts = split(opts.range, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ConfigError("cli", "sweep-range", "expected from:to:steps[:linear|log]");
  }
  const auto from = leading_number(parts[0]);
  const auto to = leading_number(parts[1]);
  unsigned steps = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), steps);
  if (!from || !to || ec != std::errc{} || ptr != parts[2].data() + parts[2].size()) {
    throw ConfigError("cli", "sweep-range", "expected from:to:steps[:linear|log]");
  }
  if (steps < 2) throw ConfigError("cli", "sweep-range", "steps must be >= 2");
  const std::string scale = parts.size() == 4 ? parts[3] : "linear";
  if (scale != "linear" && scale != "log") {
    throw ConfigError("cli", "sweep-range", "scale must be linear or log");
  }
  if (scale == "log" && !(*from > 0.0 && *to > 0.0)) {
    throw ConfigError("cli", "sweep-range", "log scale needs positive endpoints");
  }
  for (unsigned i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / (steps - 1);
    double v = scale == "log" ? *from * std::pow(*to / *from, f) : *from + (*to - *from) * f;
    if (i == 0) v = *from;
    if (i + 1 == steps) v = *to;
    points.push_back({v, shortest(v)});
  }
  return points;
}

std::string sweep_csv(const InputDocs& base, const SweepOptions& opts, std::ostream* diagnostics) {
  if (opts.axis.empty()) throw ConfigError("cli", "sweep-axis", "an axis is required");
  if (!is_numeric_leaf(base, opts.axis)) {
    throw ConfigError("cli", "sweep-axis", "'" + opts.axis + "' is not a numeric parameter");
  }
  const auto metrics = parse_metrics(opts.metrics.empty() ? kDefaultMetrics : opts.metrics);
  const auto points = sweep_points(opts);

  std::vector<std::string> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::vector<std::string> notes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        InputDocs docs = base;
        apply_override(docs, opts.axis, points[i].override_value);
        std::string row = format_number(points[i].axis_value);
        try {
          const Evaluation e = evaluate(docs);
          for (const Metric* m : metrics) row += "," + format_number(m->get(e));
        } catch (const DivergenceError& d) {
          // the link never delivers at this point: no finite metrics
          for (std::size_t k = 0; k < metrics.size(); ++k) row += ",nan";
          notes[i] = "sweep point " + format_number(points[i].axis_value) + ": " + d.what();
        }
        rows[i] = row + "\n";
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, points.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (diagnostics != nullptr) {
    for (const auto& n : notes) {
      if (!n.empty()) *diagnostics << "warning: " << n << '\n';
    }
  }

  std::string csv = opts.axis;
  for (const Metric* m : metrics) csv += "," + std::string(m->name);
  csv += "\n";
  for (const auto& row : rows) csv += row;
  return csv;
}

int cmd_evaluate(const CommonOptions& opts, const std::string& metrics,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Evaluation e = evaluate(prepare_inputs(opts));
    const auto& b = e.breakdown;
    const auto& s = e.inputs.scenario;
    const double nt = static_cast<double>(s.n_tx_bits);
    const double nr = static_cast<double>(s.n_rx_bits);
    const auto& T = b.link.transmit;
    const auto& R = b.link.receive;

    struct Row {
      const char* layer;
      const char* component;
      double value;
    };
    const std::vector<Row> rows = {
        {"sensing", "microphone", b.sensing.e_mic},
        {"sensing", "lna", b.sensing.e_lna},
        {"sensing", "adc", b.sensing.e_adc},
        {"sensing", "layer", b.sensing.total},
        {"processing", "operations", b.processing.e_ops},
        {"processing", "memory_access", b.processing.e_mem_access},
        {"processing", "memory_leakage", b.processing.e_mem_leak},
        {"processing", "layer", b.processing.total},
        {"tx", "startup", nt * T.startup},
        {"tx", "coding", nt * T.coding},
        {"tx", "electronics_tx", nt * T.electronics_tx},
        {"tx", "electronics_rx", nt * T.electronics_rx},
        {"tx", "pa_forward", nt * T.pa_forward},
        {"tx", "pa_feedback", nt * T.pa_feedback},
        {"tx", "layer", b.tx},
        {"rx", "startup", nr * R.startup},
        {"rx", "coding", nr * R.coding},
        {"rx", "electronics_tx", nr * R.electronics_tx},
        {"rx", "electronics_rx", nr * R.electronics_rx},
        {"rx", "pa_forward", nr * R.pa_forward},
        {"rx", "pa_feedback", nr * R.pa_feedback},
        {"rx", "layer", b.rx},
        {"total", "node", b.total},
    };
    std::ostringstream table;
    table << pad("layer", 12) << pad("component", 16) << "energy_J\n";
    for (const auto& r : rows) {
      table << pad(r.layer, 12) << pad(r.component, 16) << format_number(r.value) << '\n';
    }
    table << '\n'
          << pad("phi", 28) << format_number(b.link.uplink_stats.phi) << '\n'
          << pad("q_x", 28) << format_number(b.link.uplink_stats.q_x) << '\n'
          << pad("energy_per_tx_bit_J", 28) << format_number(T.total) << '\n'
          << pad("energy_per_rx_bit_J", 28) << format_number(R.total) << '\n'
          << pad("lifetime", 28) << format_lifetime(e.lifetime_s) << '\n';
    for (const auto& w : b.warnings) table << "warning: " << w << '\n';
    out << table.str();

    if (!out_path.empty()) {
      const auto selected = metrics.empty() ? std::vector<const Metric*>{} : parse_metrics(metrics);
      std::string csv = "metric,value\n";
      if (selected.empty()) {
        for (const auto& m : metric_registry()) {
          csv += std::string(m.name) + "," + format_number(m.get(e)) + "\n";
        }
      } else {
        for (const Metric* m : selected) {
          csv += std::string(m->name) + "," + format_number(m->get(e)) + "\n";
        }
      }
      write_output(csv, out_path, out);
    }
    return 0;
  });
}

int cmd_sweep(const CommonOptions& opts, const SweepOptions& sweep, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const std::string csv = sweep_csv(prepare_inputs(opts), sweep, &err);
    write_output(csv, sweep.out_path, out);
    return 0;
  });
}

int cmd_lifetime(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Evaluation e = evaluate(prepare_inputs(opts));
    out << format_lifetime(e.lifetime_s) << '\n';
    return 0;
  });
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.episodes < 2) throw ConfigError("cli", "episodes", "must be >= 2");
    std::vector<CheckResult> checks = retransmission_checks(opts);
    for (auto& c : op_count_checks()) checks.push_back(std::move(c));
    for (auto& c : ber_checks()) checks.push_back(std::move(c));
    out << validation_report(checks);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    return ok ? 0 : 2;
  });
}

}  // namespace wasnem::cli
