#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "infokernel/kernels.hpp"
#include "infokernel/separation.hpp"
#include "infokernel/solver.hpp"

using namespace infokernel;

namespace {

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) s += v = e(rng) + 1e-3;
  for (auto& v : w) v /= s;
  return w;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

void BM_SolveForLambda(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto space = FiniteSpace::indexed(n);
  const Utility x(space, random_values(rng, n));
  const auto f = InfoFunctional::extended_kl(Measure(space, random_simplex(rng, n)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_for_lambda(x, f, 0.3));
}
BENCHMARK(BM_SolveForLambda)->RangeMultiplier(8)->Range(4, 4096);

void BM_ValueCurve(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  std::mt19937_64 rng(2);
  const std::size_t n = 256;
  const auto space = FiniteSpace::indexed(n);
  const Utility x(space, random_values(rng, n));
  const auto f = InfoFunctional::extended_kl(Measure(space, random_simplex(rng, n)));
  std::vector<double> grid(100);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.02 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(value_curve(x, f, grid, Branch::Upper, threads));
}
BENCHMARK(BM_ValueCurve)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_ChannelIteration(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<std::vector<double>> m(n);
  for (auto& row : m) row = random_values(rng, n);
  const auto x = JointUtility::from_rows(m);
  const ProbMeasure input(FiniteSpace::indexed(n), random_simplex(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(channel_optimize(x, input, ChannelTarget::beta(4.0)));
}
BENCHMARK(BM_ChannelIteration)->RangeMultiplier(2)->Range(4, 64);

void BM_ChannelLambdaTarget(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const std::size_t n = 8;
  std::vector<std::vector<double>> m(n);
  for (auto& row : m) row = random_values(rng, n);
  const auto x = JointUtility::from_rows(m);
  const ProbMeasure input(FiniteSpace::indexed(n), random_simplex(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(channel_optimize(x, input, ChannelTarget::lambda(0.5)));
}
BENCHMARK(BM_ChannelLambdaTarget);

void BM_EnumerateDeterministic(benchmark::State& state) {
  const auto na = static_cast<std::size_t>(state.range(0));
  const auto nb = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(5);
  std::vector<std::vector<double>> m(nb);
  for (auto& row : m) row = random_values(rng, na);
  const auto x = JointUtility::from_rows(m);
  const ProbMeasure input(FiniteSpace::indexed(nb), random_simplex(rng, nb));
  for (auto _ : state) {
    double best = -1.0;
    for (const auto& f : enumerate_deterministic(na, nb)) {
      best = std::max(best, evaluate_deterministic(x, input, f).expected_utility);
    }
    benchmark::DoNotOptimize(best);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(*deterministic_map_count(na, nb)));
}
BENCHMARK(BM_EnumerateDeterministic)->Args({2, 8})->Args({3, 6})->Args({4, 6});

}  // namespace
BENCHMARK_MAIN();
