#include "boxdual/boxdual.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace boxdual;

InverseProblem random_problem(Index m, Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix a = Matrix::NullaryExpr(m, n, [&] { return unit(rng); });
  const BoxDomain box = BoxDomain::uniform(n, -1.0, 1.0);
  const Vector x = Vector::NullaryExpr(n, [&] { return 0.8 * unit(rng); });
  Vector y = a * x;
  return InverseProblem(std::move(a), std::move(y), box);
}

void BM_Solve(benchmark::State& state) {
  const InverseProblem p = random_problem(state.range(0), state.range(1), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(p));
  }
}
BENCHMARK(BM_Solve)->Args({2, 10})->Args({10, 50})->Args({50, 200})->Args({100, 1000});

void BM_LogMgf(benchmark::State& state) {
  const Index n = state.range(0);
  const BoxDomain box = BoxDomain::uniform(n, 0.0, 2.0);
  const Vector tau = Vector::LinSpaced(n, -20.0, 20.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_mgf(tau, box));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_LogMgf)->Arg(100)->Arg(10000);

void BM_Sensitivity(benchmark::State& state) {
  const InverseProblem p = random_problem(state.range(0), 4 * state.range(0), 7);
  const Solution s = solve(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_sensitivity(s, p));
  }
}
BENCHMARK(BM_Sensitivity)->Arg(10)->Arg(50);

void BM_MarkovDemo(benchmark::State& state) {
  const Index n = state.range(0);
  const markov::ChainSpec chain =
      markov::build_chain(n, markov::ChainKind::kReflectingRandomWalk);
  const markov::ReconstructionCase c = markov::make_case(
      chain, markov::evenly_spaced_rows(n, n / 5), 1.0, markov::smooth_profile(n, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(markov::reconstruct_initial(c));
  }
}
BENCHMARK(BM_MarkovDemo)->Arg(50)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
