#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dualpair/epdiff.hpp"
#include "dualpair/mapping_space.hpp"
#include "dualpair/poly_poisson.hpp"
#include "dualpair/studies.hpp"
#include "dualpair/summation.hpp"

using namespace dualpair;

namespace {

grid::MapField bench_map(std::size_t n) {
  std::mt19937_64 rng(1);
  grid::GridSource g(grid::Topology::Periodic, n);
  return studies::sample_map(g, studies::random_fields(rng, 4));
}

}  // namespace

static void BM_ExactSum(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (double& x : v) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_sum(v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactSum)->Arg(1 << 10)->Arg(1 << 16);

static void BM_PoissonBracket(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto g = poly::random_poly(rng, 2, static_cast<int>(state.range(0)), 8);
  const auto h = poly::random_poly(rng, 2, static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(poly::poisson_bracket_exact(g, h));
}
BENCHMARK(BM_PoissonBracket)->Arg(2)->Arg(4);

static void BM_PullbackOmega(benchmark::State& state) {
  const auto f = bench_map(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mapping::pullback_omega(f));
}
BENCHMARK(BM_PullbackOmega)->Arg(32)->Arg(128);

static void BM_RightGenerator(benchmark::State& state) {
  const auto f = bench_map(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(4);
  const auto a = studies::sample_stream(f.grid(), studies::TrigField::random(rng));
  for (auto _ : state) benchmark::DoNotOptimize(mapping::right_generator(f, a));
}
BENCHMARK(BM_RightGenerator)->Arg(32)->Arg(128);

static void BM_LeftFlowStep(benchmark::State& state) {
  mapping::LeftFlow flow(bench_map(static_cast<std::size_t>(state.range(0))),
                         studies::study_hamiltonian(2), symplectic::Method::ImplicitMidpoint, 1e-2);
  for (auto _ : state) flow.advance();
}
BENCHMARK(BM_LeftFlowStep)->Arg(32);

static void BM_FilamentStep(benchmark::State& state) {
  const auto fs = studies::random_filament(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(epdiff::step(fs.state(), symplectic::Method::ImplicitMidpoint, 1e-3, 1));
  }
}
BENCHMARK(BM_FilamentStep)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
