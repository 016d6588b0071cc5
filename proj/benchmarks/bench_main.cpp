#include <benchmark/benchmark.h>

#include <random>

#include "lmzv/euler.hpp"
#include "lmzv/ncseries.hpp"
#include "lmzv/synth.hpp"

using namespace lmzv;

namespace {

NCSeries sparse_series(const Alphabet& a, std::size_t degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NCSeries s(a, degree);
  for (int t = 0; t < 4; ++t) {
    std::vector<Letter> letters;
    const std::size_t len = 1 + rng() % 3;
    for (std::size_t i = 0; i < len; ++i) letters.push_back(a.letter(rng() % a.size()));
    s.add_term(Monomial(std::move(letters)), Rational(static_cast<std::int64_t>(rng() % 7) - 3));
  }
  return s;
}

void BM_SeriesProduct(benchmark::State& state) {
  const Alphabet a(3, 1);
  const auto D = static_cast<std::size_t>(state.range(0));
  const NCSeries x = NCSeries::one(a, D) + sparse_series(a, D, 1);
  const NCSeries y = NCSeries::one(a, D) + sparse_series(a, D, 2);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_SeriesProduct)->Arg(4)->Arg(6)->Arg(8);

void BM_ExpLog(benchmark::State& state) {
  const Alphabet a(3, 1);
  const auto D = static_cast<std::size_t>(state.range(0));
  const NCSeries s = sparse_series(a, D, 3);
  for (auto _ : state) benchmark::DoNotOptimize(log(exp(s)));
}
BENCHMARK(BM_ExpLog)->Arg(4)->Arg(6)->Arg(8);

void BM_Kernel(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  const auto r = static_cast<std::uint64_t>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(four_term_kernel(p, n, r));
}
BENCHMARK(BM_Kernel)->Args({3, 2, 1})->Args({2, 2, 2})->Args({3, 2, 2})->Args({5, 2, 2})->Unit(benchmark::kMillisecond);

void BM_Moment(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const LevelMeasure mu = random_kernel_measure(p, 2, 2, 7);
  const ExponentWord w{{0, 3, 4}};
  for (auto _ : state) benchmark::DoNotOptimize(moment(mu, w));
}
BENCHMARK(BM_Moment)->Arg(2)->Arg(3)->Arg(5);

void BM_CosetSweep(benchmark::State& state) {
  const LevelMeasure mu = random_kernel_measure(5, 2, 2, 8);
  const std::vector<std::uint64_t> e{2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(corollary52_sweep(mu, 2, e));
}
BENCHMARK(BM_CosetSweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
