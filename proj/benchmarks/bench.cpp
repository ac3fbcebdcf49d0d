#include <benchmark/benchmark.h>

#include "swiptgame/equilibrium.hpp"
#include "swiptgame/oracle.hpp"
#include "swiptgame/scenario.hpp"
#include "swiptgame/units.hpp"

using namespace swiptgame;

namespace {

Scenario make_scenario(int pairs, std::uint64_t seed) {
  ChannelConfig cfg;
  cfg.n_pairs = pairs;
  cfg.rng_seed = seed;
  ConstraintTemplate tpl;
  tpl.sinr_threshold = {db_to_linear(5.0)};
  return generate_rayleigh_scenario(cfg, tpl);
}

Scenario make_existent(int pairs) {
  for (std::uint64_t seed = 1;; ++seed) {
    Scenario s = make_scenario(pairs, seed);
    if (existence_check(s).exists) return s;
  }
}

}  // namespace

static void BM_BestResponse(benchmark::State& state) {
  const LocalObservation obs{8e-6, 1.1e-7, 1e-8, db_to_linear(5.0), 1e-5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(best_response(obs));
}
BENCHMARK(BM_BestResponse);

static void BM_SpectralRadius(benchmark::State& state) {
  const Scenario s = make_scenario(static_cast<int>(state.range(0)), 3);
  const Matrix omega = build_omega(s);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(omega));
}
BENCHMARK(BM_SpectralRadius)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_ExistenceCheck(benchmark::State& state) {
  const Scenario s = make_scenario(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(existence_check(s));
}
BENCHMARK(BM_ExistenceCheck)->Arg(2)->Arg(4)->Arg(8);

static void BM_Dynamics(benchmark::State& state) {
  const Scenario s = make_existent(static_cast<int>(state.range(0)));
  StrategyProfile init;
  init.power_w.assign(static_cast<std::size_t>(s.n_pairs), 0.0);
  DynamicsOptions opt;
  opt.record_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(best_response_dynamics(s, init, opt));
}
BENCHMARK(BM_Dynamics)->Arg(2)->Arg(4)->Arg(8);

static void BM_GenerateScenario(benchmark::State& state) {
  ChannelConfig cfg;
  cfg.n_pairs = static_cast<int>(state.range(0));
  ConstraintTemplate tpl;
  SplitMix64 rng(9);
  for (auto _ : state) benchmark::DoNotOptimize(generate_rayleigh_scenario(cfg, tpl, rng));
}
BENCHMARK(BM_GenerateScenario)->Arg(4)->Arg(16);

static void BM_CooperativeOracle(benchmark::State& state) {
  const Scenario s = make_existent(2);
  StrategyProfile init;
  init.power_w.assign(2, 0.0);
  DynamicsOptions opt;
  opt.record_trace = false;
  const DynamicsResult dr = best_response_dynamics(s, init, opt);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_min_total_power(s, GridConfig{}, &dr.final));
}
BENCHMARK(BM_CooperativeOracle);

BENCHMARK_MAIN();
