#include <doctest.h>

#include <array>
#include <charconv>
#include <map>
#include <cmath>
#include <cstdio>
#include <memory>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "helpers.hpp"
#include "wasnem/errors.hpp"

using namespace wasnem;
using namespace wasnem::cli;
using testing::data_path;
using testing::rel_close;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run evaluate_run(const CommonOptions& opts, const std::string& metrics = "") {
  std::ostringstream out, err;
  const int code = cmd_evaluate(opts, metrics, "", out, err);
  return {code, out.str(), err.str()};
}

Run sweep_run(const CommonOptions& opts, const SweepOptions& sweep) {
  std::ostringstream out, err;
  const int code = cmd_sweep(opts, sweep, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Energy column of the table row "<layer> <component> <value>".
double table_value(const std::string& table, const std::string& layer, const std::string& comp) {
  std::istringstream in(table);
  std::string l, c, v;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (ls >> l >> c >> v && l == layer && c == comp) return std::stod(v);
  }
  FAIL("row not found: " << layer << " " << comp);
  return 0.0;
}

Run run_binary(const std::string& args) {
  const std::string cmd = std::string(WASNEM_CLI_PATH) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {WEXITSTATUS(status), out, ""};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("every metric reads a distinct quantity") {
    // Perturb the defaults so that no two distinct fields coincide by accident.
    CommonOptions opts;
    opts.overrides = {"link.fading=block", "link.mean_snr=12", "coding.correctable_t=3",
                      "n_rx_bits=1952", "link.payload_bits_down=508"};
    const Evaluation ev = evaluate(prepare_inputs(opts));
    std::set<std::string> names;
    std::map<double, std::string> seen;
    for (const Metric& m : metric_registry()) {
      CHECK(names.insert(std::string(m.name)).second);
      CHECK(find_metric(m.name) == &m);
      const double v = m.get(ev);
      CHECK(std::isfinite(v));
      const auto [it, fresh] = seen.emplace(v, std::string(m.name));
      CHECK_MESSAGE(fresh, m.name << " duplicates " << it->second);
    }
    CHECK(metric_registry().size() == 33);
    const auto& b = ev.breakdown;
    CHECK(find_metric("total_energy")->get(ev) == b.total);
    CHECK(find_metric("tx_energy")->get(ev) == b.tx);
    CHECK(find_metric("rx_energy")->get(ev) == b.rx);
    CHECK(find_metric("energy_per_tx_bit")->get(ev) == b.link.transmit.total);
    CHECK(find_metric("energy_per_rx_bit")->get(ev) == b.link.receive.total);
    CHECK(find_metric("phi")->get(ev) == b.link.uplink_stats.phi);
    CHECK(find_metric("phi_down")->get(ev) == b.link.downlink_stats.phi);
    CHECK(find_metric("q_x")->get(ev) == b.link.uplink_stats.q_x);
    CHECK(find_metric("lifetime")->get(ev) == ev.lifetime_s);
    CHECK(find_metric("sensing_energy")->get(ev) == b.sensing.total);
    CHECK(find_metric("processing_energy")->get(ev) == b.processing.total);
    CHECK(find_metric("tx_pa_forward_per_bit")->get(ev) == b.link.transmit.pa_forward);
    CHECK(find_metric("rx_coding_per_bit")->get(ev) == b.link.receive.coding);
  }

  TEST_CASE("unknown metric lists the valid ones") {
    try {
      parse_metrics("phi,bogus");
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "metrics");
      CHECK(std::string(e.what()).find("total_energy") != std::string::npos);
    }
    SweepOptions sw;
    sw.axis = "coding.correctable_t";
    sw.values = "1";
    sw.metrics = "bogus";
    const Run r = sweep_run({}, sw);
    CHECK(r.code == 1);
    CHECK(r.err.rfind("cli:metrics:", 0) == 0);
  }

  TEST_CASE("evaluate table closes") {
    const Run r = evaluate_run({});
    REQUIRE(r.code == 0);
    const double total = table_value(r.out, "total", "node");
    const double sum = table_value(r.out, "sensing", "layer") + table_value(r.out, "processing", "layer") +
                       table_value(r.out, "tx", "layer") + table_value(r.out, "rx", "layer");
    CHECK(rel_close(total, sum, 1e-8));
    CHECK(r.out.find("lifetime") != std::string::npos);
  }

  TEST_CASE("doubling the distance scales the PA by 2^alpha") {
    CommonOptions near, far;
    near.overrides = {"link.distance_d=10"};
    far.overrides = {"link.distance_d=20"};
    const auto a = evaluate(prepare_inputs(near));
    const auto b = evaluate(prepare_inputs(far));
    CHECK(rel_close(b.breakdown.link.transmit.pa_forward / a.breakdown.link.transmit.pa_forward,
                    std::pow(2.0, 3.2), 1e-12));
  }

  TEST_CASE("malformed scenario exits 1 naming the field") {
    CommonOptions opts;
    opts.scenario_path = data_path("scenario_malformed.json");
    const Run r = evaluate_run(opts);
    CHECK(r.code == 1);
    CHECK(r.err == "node:duty_cycle:expected '<number> <unit>', got 'often'\n");
    CommonOptions bad_set;
    bad_set.overrides = {"link.nope=1"};
    CHECK(evaluate_run(bad_set).code == 1);
  }

  TEST_CASE("sweeping t trades overhead for retransmissions") {
    CommonOptions opts;
    opts.overrides = {"link.fading=block", "link.mean_snr=10"};
    SweepOptions sw;
    sw.axis = "coding.correctable_t";
    sw.values = "0,1,2,4,8";
    sw.metrics = "phi,energy_per_tx_bit";
    const Run r = sweep_run(opts, sw);
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"coding.correctable_t", "phi", "energy_per_tx_bit"});
    for (std::size_t i = 2; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));
    }
  }

  TEST_CASE("single value and ranges") {
    SweepOptions one;
    one.axis = "link.distance_d";
    one.values = "15";
    CHECK(parse_csv(sweep_run({}, one).out).size() == 2);

    SweepOptions range;
    range.axis = "link.mean_snr";
    range.range = "0:30:31";
    range.metrics = "q_x";
    const auto rows = parse_csv(sweep_run({}, range).out);
    REQUIRE(rows.size() == 32);
    CHECK(rows[1][0] == "0");
    CHECK(rows[31][0] == "30");
    for (std::size_t i = 2; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][0]) > std::stod(rows[i - 1][0]));
    }

    SweepOptions log_range;
    log_range.axis = "link.distance_d";
    log_range.range = "1:1000:4:log";
    const auto pts = sweep_points(log_range);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].axis_value == 1.0);
    CHECK(pts[1].axis_value == doctest::Approx(10.0));
    CHECK(pts[3].axis_value == 1000.0);

    SweepOptions both = one;
    both.range = "1:2:2";
    CHECK_THROWS_AS(sweep_points(both), ConfigError);
    SweepOptions short_range;
    short_range.range = "1:2:1";
    CHECK_THROWS_AS(sweep_points(short_range), ConfigError);
    SweepOptions not_numeric;
    not_numeric.axis = "link.fading";
    not_numeric.values = "1";
    CHECK(sweep_run({}, not_numeric).code == 1);
  }

  TEST_CASE("divergent sweep points become nan rows") {
    SweepOptions sw;
    sw.axis = "link.mean_snr";
    sw.values = "-60,20";
    sw.metrics = "phi";
    std::ostringstream diag;
    const std::string csv = sweep_csv(load_inputs("", ""), sw, &diag);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[2][1] != "nan");
  }

  TEST_CASE("sweep output is deterministic") {
    SweepOptions sw;
    sw.axis = "link.distance_d";
    sw.range = "5:50:12";
    const std::string a = sweep_csv(load_inputs("", ""), sw);
    const std::string b = sweep_csv(load_inputs("", ""), sw);
    CHECK(a == b);
  }

  TEST_CASE("lifetime command") {
    CommonOptions trivial;
    trivial.overrides = {"duty_cycle=1", "n_batteries=1", "delta=1"};
    const Evaluation ev = evaluate(prepare_inputs(trivial));
    // shortest round-trip form so that B equals the node energy exactly
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, ev.breakdown.total);
    trivial.overrides.push_back("battery_capacity=" + std::string(buf, res.ptr));
    std::ostringstream out, err;
    CHECK(cmd_lifetime(trivial, out, err) == 0);
    CHECK(out.str().rfind("1.000 s", 0) == 0);

    CommonOptions full, half;
    half.overrides = {"duty_cycle=0.05"};
    const double base = evaluate(prepare_inputs(full)).lifetime_s;
    CHECK(evaluate(prepare_inputs(half)).lifetime_s == 2 * base);
    CHECK(rel_close(base, 4286831.403, 1e-9));
    CHECK(format_lifetime(1.0) == "1.000 s (1.157e-05 days, 3.169e-08 years)");
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(INFINITY) == "inf");
  }

  TEST_CASE("validation report and negative control") {
    ValidateOptions opts;
    opts.episodes = 100'000;
    std::ostringstream out1, out2, err;
    CHECK(cmd_validate(opts, out1, err) == 0);
    CHECK(cmd_validate(opts, out2, err) == 0);
    CHECK(out1.str() == out2.str());
    opts.pf_bias = 0.05;
    std::ostringstream bad;
    CHECK(cmd_validate(opts, bad, err) == 2);
    CHECK(bad.str().find("FAIL") != std::string::npos);
  }

  TEST_CASE("binary entry point") {
    const Run ok = run_binary("evaluate --set link.distance_d=12");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("total") != std::string::npos);
    const Run bad = run_binary("evaluate --scenario " + data_path("scenario_malformed.json"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("node:duty_cycle:") == 0);
    const Run args = run_binary("sweep --sweep-values 1");
    CHECK(args.code == 1);
    const Run life = run_binary("lifetime --set duty_cycle=0.2");
    CHECK(life.code == 0);
  }
}
