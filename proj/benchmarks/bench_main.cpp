// Hot-path microbenchmarks: envelope construction (both simplex
// dimensions), the discounted solver, the matrix-game LP, and simulation
// throughput.  Run with --benchmark_min_time=... to tighten the numbers.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "persuade/envelope.hpp"
#include "persuade/gamma.hpp"
#include "persuade/instance.hpp"
#include "persuade/lp.hpp"
#include "persuade/rng.hpp"
#include "persuade/solver.hpp"

namespace {

using namespace persuade;

std::vector<double> rough_values(const SimplexGrid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> f(grid.size());
  for (double& v : f) v = rng.uniform01();
  return f;
}

void bm_envelope_segment(benchmark::State& state) {
  auto grid = make_grid(2, static_cast<std::size_t>(state.range(0)));
  auto f = rough_values(*grid, 1u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(concave_envelope(grid, f));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_envelope_segment)->Range(256, 16384)->Complexity();

void bm_envelope_triangle(benchmark::State& state) {
  auto grid = make_grid(3, static_cast<std::size_t>(state.range(0)));
  auto f = rough_values(*grid, 2u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(concave_envelope(grid, f));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_envelope_triangle)->Range(8, 64)->Complexity();

void bm_solver(benchmark::State& state) {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_discounted_value(inst, m, 0.9, grid, 1e-6));
  }
}
BENCHMARK(bm_solver)->Arg(500)->Arg(2000);

void bm_matrix_game(benchmark::State& state) {
  SplitMix64 rng(3u);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (auto& row : a)
    for (double& e : row) e = rng.uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_matrix_game(a));
  }
}
BENCHMARK(bm_matrix_game)->Arg(4)->Arg(16)->Arg(64);

void bm_simulation(benchmark::State& state) {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 2000);
  ThetaStarSender sender(inst, m, 0.5, grid, 1e-6);
  IidAdversary adversary(0.3);
  const std::size_t horizon = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_gamma(inst, m, 0.5, sender, adversary, horizon, 4, ++seed, grid));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 4 *
                          static_cast<std::int64_t>(horizon));
}
BENCHMARK(bm_simulation)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
