// Parallel kernels against their single-threaded references.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "signrank/fixtures.hpp"
#include "signrank/pattern.hpp"
#include "signrank/realize.hpp"

using namespace signrank;

namespace {

// A0 with rows and columns shuffled and some signs flipped.
SignPattern scrambled_a0() {
  const SignPattern a0 = fixture_pattern("A0");
  std::mt19937_64 rng(3);
  EquivalenceWitness w;
  w.row_perm.resize(9);
  w.col_perm.resize(9);
  std::iota(w.row_perm.begin(), w.row_perm.end(), 0);
  std::iota(w.col_perm.begin(), w.col_perm.end(), 0);
  std::shuffle(w.row_perm.begin(), w.row_perm.end(), rng);
  std::shuffle(w.col_perm.begin(), w.col_perm.end(), rng);
  for (int k = 0; k < 9; ++k) {
    w.row_signs.push_back(rng() % 2 ? Sign::Positive : Sign::Negative);
    w.col_signs.push_back(rng() % 2 ? Sign::Positive : Sign::Negative);
  }
  return apply_equivalence(a0, w);
}

// Zero-free random pattern; no 4x4 SNS block exists, so the search is exhaustive.
SignPattern dense_pattern(std::size_t n) {
  std::mt19937_64 rng(11);
  SignPattern a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, rng() % 2 ? Sign::Positive : Sign::Negative);
  return a;
}

void BM_EquivalenceParallel(benchmark::State& state) {
  const SignPattern a = fixture_pattern("A0"), b = scrambled_a0();
  for (auto _ : state) benchmark::DoNotOptimize(is_equivalent(a, b));
}
void BM_EquivalenceSerial(benchmark::State& state) {
  const SignPattern a = fixture_pattern("A0"), b = scrambled_a0();
  for (auto _ : state) benchmark::DoNotOptimize(is_equivalent_serial(a, b));
}

void BM_MaxSnsParallel(benchmark::State& state) {
  const SignPattern a = dense_pattern(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_sns_submatrix(a, 4));
}
void BM_MaxSnsSerial(benchmark::State& state) {
  const SignPattern a = dense_pattern(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_sns_submatrix_serial(a, 4));
}

// A rank-2 search on A0 never succeeds, so every restart runs to completion.
void BM_SearchParallel(benchmark::State& state) {
  const SignPattern a0 = fixture_pattern("A0");
  SearchParams p;
  p.restarts = static_cast<int>(state.range(0));
  p.iters = 500;
  for (auto _ : state) benchmark::DoNotOptimize(search_realization(a0, 2, p));
}
void BM_SearchSerial(benchmark::State& state) {
  const SignPattern a0 = fixture_pattern("A0");
  SearchParams p;
  p.restarts = static_cast<int>(state.range(0));
  p.iters = 500;
  for (auto _ : state) benchmark::DoNotOptimize(search_realization_serial(a0, 2, p));
}

}  // namespace

BENCHMARK(BM_EquivalenceParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EquivalenceSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MaxSnsParallel)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxSnsSerial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
