#include <benchmark/benchmark.h>

#include "sidechain/classical/annealing.hpp"
#include "sidechain/classical/brute_force.hpp"
#include "sidechain/energy/generator.hpp"

namespace {

using namespace sidechain;

void BM_BruteForce(benchmark::State& state) {
  const auto problem = generate_problem(
      GeneratorOptions::uniform(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(problem).ground_energy);
}
BENCHMARK(BM_BruteForce)->Args({5, 4})->Args({5, 7})->Args({7, 5})->Unit(benchmark::kMillisecond);

void BM_AnnealContinuous(benchmark::State& state) {
  const auto problem = generate_problem(GeneratorOptions::uniform(5, static_cast<int>(state.range(0)), 2));
  SaConfig config;
  config.max_iterations = 50;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(dual_anneal(problem, config).evaluations);
  }
}
BENCHMARK(BM_AnnealContinuous)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_AnnealDiscrete(benchmark::State& state) {
  const auto problem = generate_problem(GeneratorOptions::uniform(5, static_cast<int>(state.range(0)), 2));
  SaConfig config;
  config.method = SaMethod::discrete;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(dual_anneal(problem, config).evaluations);
  }
}
BENCHMARK(BM_AnnealDiscrete)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
