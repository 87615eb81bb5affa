#include <benchmark/benchmark.h>

#include <vector>

#include "sns/bench.hpp"
#include "sns/charts.hpp"
#include "sns/normal.hpp"
#include "sns/rank_store.hpp"
#include "sns/scorer.hpp"
#include "sns/streams.hpp"

namespace {

std::vector<double> draws(std::size_t n, std::uint64_t seed) {
  sns::UniformStream u(seed, 0);
  std::vector<double> x(n);
  for (double& v : x) v = u.draw(sns::Distribution::normal);
  return x;
}

void BM_PhiInverse(benchmark::State& state) {
  sns::UniformStream u(1, 0);
  std::vector<double> p(4096);
  for (double& v : p) v = u.next();
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sns::phi_inverse(p[k++ & 4095]));
  }
}
BENCHMARK(BM_PhiInverse);

// Query cost against a store that already holds range(0) values.
void BM_RankStoreCounts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = draws(n, 2);
  sns::RankStore store;
  for (double v : x) store.insert(v);
  const auto q = draws(4096, 3);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.counts(q[k++ & 4095]));
  }
}
BENCHMARK(BM_RankStoreCounts)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_WindowedInsert(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto x = draws(1 << 16, 4);
  sns::RankStore store(w);
  std::size_t k = 0;
  for (auto _ : state) store.insert(x[k++ & 0xffff]);
}
BENCHMARK(BM_WindowedInsert)->Arg(100)->Arg(10000);

// Whole-stream scoring, reported per observation.
void BM_IndividualScoring(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = draws(n, 5);
  for (auto _ : state) {
    sns::IndividualScorer scorer;
    for (double v : x) benchmark::DoNotOptimize(scorer.score(v));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_IndividualScoring)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_BatchScoring(benchmark::State& state) {
  const auto x = draws(100000, 6);
  for (auto _ : state) {
    sns::BatchScorer scorer(10);
    for (std::size_t k = 0; k + 10 <= x.size(); k += 10) {
      benchmark::DoNotOptimize(scorer.score(std::span<const double>(x).subspan(k, 10)));
    }
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_BatchScoring)->Unit(benchmark::kMillisecond);

void BM_CusumStep(benchmark::State& state) {
  const auto z = draws(4096, 7);
  sns::CusumMean chart(0.25, 1e9, sns::CusumSide::both);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chart.step(z[k++ & 4095]));
}
BENCHMARK(BM_CusumStep);

void BM_LepageEvaluation(benchmark::State& state) {
  const auto x = draws(sns::kLepageReference + sns::kLepageWindow, 8);
  const std::span<const double> all(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sns::lepage_statistic(all.first(sns::kLepageReference), all.last(sns::kLepageWindow)));
  }
}
BENCHMARK(BM_LepageEvaluation);

void BM_MannWhitneyScan(benchmark::State& state) {
  const auto x = draws(static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(sns::mann_whitney_changepoint(x));
}
BENCHMARK(BM_MannWhitneyScan)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
