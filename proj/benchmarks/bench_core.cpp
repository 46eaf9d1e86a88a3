#include <benchmark/benchmark.h>

#include "thetamom/charsum.hpp"
#include "thetamom/divisor.hpp"
#include "thetamom/primes.hpp"
#include "thetamom/theta.hpp"

using namespace thetamom;

static void BM_ThetaAllCharacters(benchmark::State& state) {
  const auto p = nearest_prime(static_cast<double>(state.range(0)));
  const PrimeContext ctx(p);
  for (auto _ : state) benchmark::DoNotOptimize(theta_all_characters(ctx, 0));
  state.SetLabel("p=" + std::to_string(p));
}
BENCHMARK(BM_ThetaAllCharacters)->Arg(1009)->Arg(10007)->Arg(100003)->Unit(benchmark::kMicrosecond);

static void BM_ThetaNaiveAllCharacters(benchmark::State& state) {
  const auto p = nearest_prime(static_cast<double>(state.range(0)));
  const PrimeContext ctx(p);
  const auto n = truncation_length(p, 0, 1.0, ThetaRequest::default_tail_eps(p));
  for (auto _ : state) {
    for (std::uint64_t j = 0; j < ctx.order(); j += 2) benchmark::DoNotOptimize(theta_naive(ctx, CharacterId{j}, 0, 1.0, n));
  }
  state.SetLabel("p=" + std::to_string(p));
}
BENCHMARK(BM_ThetaNaiveAllCharacters)->Arg(1009)->Arg(10007)->Unit(benchmark::kMicrosecond);

static void BM_PrimeContext(benchmark::State& state) {
  const auto p = nearest_prime(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(PrimeContext(p));
}
BENCHMARK(BM_PrimeContext)->Arg(10007)->Arg(100003)->Unit(benchmark::kMicrosecond);

static void BM_PrefixMax(benchmark::State& state) {
  const auto p = nearest_prime(static_cast<double>(state.range(0)));
  const PrimeContext ctx(p);
  const auto q = garaev_window(p);
  for (auto _ : state) benchmark::DoNotOptimize(prefix_max(ctx, q));
  state.SetLabel("p=" + std::to_string(p) + " Q=" + std::to_string(q));
}
BENCHMARK(BM_PrefixMax)->Arg(1031)->Arg(8209)->Unit(benchmark::kMillisecond);

static void BM_DivisorCount(benchmark::State& state) {
  const std::vector<std::uint64_t> box(2, static_cast<std::uint64_t>(state.range(0)));
  const auto strategy = state.range(1) == 0 ? CountStrategy::enumeration : CountStrategy::histogram;
  for (auto _ : state) benchmark::DoNotOptimize(restricted_divisor_count(box, strategy));
}
BENCHMARK(BM_DivisorCount)->Args({100, 0})->Args({100, 1})->Args({2000, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
