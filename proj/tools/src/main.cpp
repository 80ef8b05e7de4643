#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace wasnem::cli;

  CLI::App app{"Energy model of a wireless acoustic sensor node"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--profile", common.profile_path, "Hardware profile JSON");
    cmd->add_option("--scenario", common.scenario_path, "Scenario JSON");
    cmd->add_option("--set", common.overrides, "Override a parameter: dotted.path=value")
        ->take_all();
  };

  std::string metrics;
  std::string out_path;
  auto* evaluate = app.add_subcommand("evaluate", "Energy breakdown of one scenario");
  add_common(evaluate);
  evaluate->add_option("--metrics", metrics, "Comma-separated metrics for --out");
  evaluate->add_option("--out", out_path, "Write metric,value CSV here");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate along one parameter axis");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--sweep-axis", sweep.axis, "Dotted parameter path")->required();
  auto* values = sweep_cmd->add_option("--sweep-values", sweep.values, "Comma-separated values");
  auto* range = sweep_cmd->add_option("--sweep-range", sweep.range, "from:to:steps[:linear|log]");
  values->excludes(range);
  sweep_cmd->add_option("--metrics", sweep.metrics, "Comma-separated metric names");
  sweep_cmd->add_option("--out", sweep.out_path, "CSV output path (default stdout)");

  auto* lifetime = app.add_subcommand("lifetime", "Battery lifetime of one scenario");
  add_common(lifetime);

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Run the model oracles");
  validate_cmd->add_option("--seed", validate.seed, "Monte Carlo seed");
  validate_cmd->add_option("--episodes", validate.episodes, "Monte Carlo episodes per case");
  validate_cmd->add_option("--inject-pf-bias", validate.pf_bias,
                           "Shift the simulated frame error rate (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cli:arguments:" << e.what() << '\n';
    return 1;
  }

  if (*evaluate) return cmd_evaluate(common, metrics, out_path, std::cout, std::cerr);
  if (*sweep_cmd) return cmd_sweep(common, sweep, std::cout, std::cerr);
  if (*lifetime) return cmd_lifetime(common, std::cout, std::cerr);
  return cmd_validate(validate, std::cout, std::cerr);
}
