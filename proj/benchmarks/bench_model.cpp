#include <benchmark/benchmark.h>

#include "wasnem/comm.hpp"
#include "wasnem/node.hpp"
#include "wasnem/retransmission.hpp"

#ifdef WASNEM_BENCH_SWEEP
#include "commands.hpp"
#endif

namespace {

using namespace wasnem;

void node_energy_default(benchmark::State& state) {
  const Scenario s = default_scenario();
  const HardwareProfile p = default_profile();
  for (auto _ : state) benchmark::DoNotOptimize(node_energy(s, p).total);
}
BENCHMARK(node_energy_default);

// Block fading adds a quadrature over the SNR density for each direction.
void node_energy_block_fading(benchmark::State& state) {
  Scenario s = default_scenario();
  s.link.fading = Fading::block;
  s.link.mean_snr = db_to_linear(15.0);
  const HardwareProfile p = default_profile();
  for (auto _ : state) benchmark::DoNotOptimize(node_energy(s, p).total);
}
BENCHMARK(node_energy_block_fading);

void frame_error_rate_bch(benchmark::State& state) {
  const CodingScheme c = make_bch_scheme(1016, CodingConfig{});
  double pb = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frame_error_rate(16, c, {pb, pb}));
    pb = pb < 0.1 ? pb * 1.01 : 1e-4;
  }
}
BENCHMARK(frame_error_rate_bch);

void simulate_block_fading(benchmark::State& state) {
  const auto dist = FrameErrorDistribution::discrete({0.1, 0.5}, {0.5, 0.5});
  const auto episodes = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_retransmissions(dist, 3, Fading::block, episodes, 1).phi.value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(simulate_block_fading)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

#ifdef WASNEM_BENCH_SWEEP
void sweep_distance(benchmark::State& state) {
  const auto docs = load_inputs("", "");
  cli::SweepOptions sw;
  sw.axis = "link.distance_d";
  sw.range = "1:100:" + std::to_string(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cli::sweep_csv(docs, sw));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(sweep_distance)->Arg(32)->Arg(256)->Unit(benchmark::kMillisecond);
#endif

}  // namespace

BENCHMARK_MAIN();
