#include "sns/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sns/scorer.hpp"
#include "sns/streams.hpp"

namespace sns {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::vector<double> normal_stream(std::size_t n, std::uint64_t seed) {
  UniformStream u(seed, 0);
  std::vector<double> x(n);
  for (double& v : x) v = u.draw(Distribution::normal);
  return x;
}

std::string sns_label(const char* base, const std::optional<std::size_t>& window) {
  return window ? std::string(base) + "-window" : std::string(base);
}

// Keeps the optimizer from discarding timed work.
volatile double g_sink = 0.0;

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

ChangePointScan mann_whitney_changepoint(std::span<const double> values) {
  const std::size_t n = values.size();
  ChangePointScan best;
  if (n < 2) return best;
  const std::vector<double> ranks = midranks(values);
  const double nd = static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k) {
    double rank_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) rank_sum += ranks[j];
    const double kd = static_cast<double>(k);
    const double u = rank_sum - kd * (kd + 1.0) / 2.0;
    const double mean = kd * (nd - kd) / 2.0;
    const double sd = std::sqrt(kd * (nd - kd) * (nd + 1.0) / 12.0);
    const double stat = std::abs(u - mean) / sd;
    if (stat > best.statistic) {
      best.statistic = stat;
      best.split = k;
    }
  }
  return best;
}

double lepage_statistic(std::span<const double> reference, std::span<const double> window) {
  const std::size_t n1 = reference.size();
  const std::size_t n2 = window.size();
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("lepage_statistic: empty sample");
  std::vector<double> pooled(reference.begin(), reference.end());
  pooled.insert(pooled.end(), window.begin(), window.end());
  const std::vector<double> ranks = midranks(pooled);

  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  const double big_n = a + b;
  double w = 0.0;
  double ab = 0.0;
  for (std::size_t j = n1; j < pooled.size(); ++j) {
    w += ranks[j];
    ab += std::min(ranks[j], big_n + 1.0 - ranks[j]);
  }
  const double w_mean = b * (big_n + 1.0) / 2.0;
  const double w_var = a * b * (big_n + 1.0) / 12.0;
  double ab_mean = 0.0;
  double ab_var = 0.0;
  if (pooled.size() % 2 == 0) {
    ab_mean = b * (big_n + 2.0) / 4.0;
    ab_var = a * b * (big_n + 2.0) * (big_n - 2.0) / (48.0 * (big_n - 1.0));
  } else {
    ab_mean = b * (big_n + 1.0) * (big_n + 1.0) / (4.0 * big_n);
    ab_var = a * b * (big_n + 1.0) * (3.0 + big_n * big_n) / (48.0 * big_n * big_n);
  }
  const double zw = (w - w_mean) / std::sqrt(w_var);
  const double zab = ab_var > 0.0 ? (ab - ab_mean) / std::sqrt(ab_var) : 0.0;
  return zw * zw + zab * zab;
}

BenchResult bench_sns(std::size_t n, std::size_t repeats, std::uint64_t seed,
                      std::optional<std::size_t> window) {
  if (n < 2 || repeats == 0) throw std::invalid_argument("bench_sns: need n >= 2 and repeats >= 1");
  const std::size_t block =
      std::max<std::size_t>(1, std::min<std::size_t>(1000, n / (2 * (repeats + 1))));
  const std::size_t timed = block * (repeats + 1);
  const std::vector<double> x = normal_stream(n, seed);

  IndividualScorer scorer(ScoringConvention::rankit(), window);
  const std::size_t prefix = n - timed;
  for (std::size_t t = 0; t < prefix; ++t) scorer.score(x[t]);

  std::vector<double> samples;
  double sink = 0.0;
  for (std::size_t r = 0; r <= repeats; ++r) {
    const std::size_t begin = prefix + r * block;
    const auto start = Clock::now();
    for (std::size_t t = begin; t < begin + block; ++t) sink += scorer.score(x[t]).z;
    const double per_update = seconds_since(start) / static_cast<double>(block);
    if (r > 0) samples.push_back(per_update);
  }
  g_sink = sink;
  return {sns_label("sns", window), n, median(samples), repeats, true};
}

BenchResult bench_sns_cumulative(std::size_t n, std::size_t repeats, std::uint64_t seed,
                                 std::optional<std::size_t> window) {
  if (n == 0 || repeats == 0) throw std::invalid_argument("bench_sns_cumulative: need n, repeats >= 1");
  const std::vector<double> x = normal_stream(n, seed);
  std::vector<double> samples;
  double sink = 0.0;
  for (std::size_t r = 0; r <= repeats; ++r) {
    const auto start = Clock::now();
    IndividualScorer scorer(ScoringConvention::rankit(), window);
    for (double v : x) sink += scorer.score(v).z;
    const double elapsed = seconds_since(start);
    if (r > 0) samples.push_back(elapsed);
  }
  g_sink = sink;
  return {sns_label("sns-cumulative", window), n, median(samples), repeats, true};
}

BenchResult bench_baseline_mw(std::size_t n, std::size_t repeats, std::uint64_t seed) {
  if (repeats == 0) throw std::invalid_argument("bench_baseline_mw: repeats must be >= 1");
  if (n > kMwMaxN) {
    return {"mw-changepoint", n, std::numeric_limits<double>::quiet_NaN(), repeats, false};
  }
  const std::vector<double> x = normal_stream(n, seed);
  std::vector<double> samples;
  double sink = 0.0;
  for (std::size_t r = 0; r <= repeats; ++r) {
    const auto start = Clock::now();
    sink += mann_whitney_changepoint(x).statistic;
    const double elapsed = seconds_since(start);
    if (r > 0) samples.push_back(elapsed);
  }
  g_sink = sink;
  return {"mw-changepoint", n, median(samples), repeats, true};
}

BenchResult bench_baseline_lepage(std::size_t n, std::size_t repeats, std::uint64_t seed) {
  if (repeats == 0) throw std::invalid_argument("bench_baseline_lepage: repeats must be >= 1");
  if (n < kLepageReference + kLepageWindow) {
    throw std::invalid_argument("bench_baseline_lepage: n must be >= reference + window");
  }
  const std::vector<double> x = normal_stream(n, seed);
  const std::span<const double> all(x);
  const auto reference = all.first(kLepageReference);
  const auto window = all.last(kLepageWindow);
  std::vector<double> samples;
  double sink = 0.0;
  for (std::size_t r = 0; r <= repeats; ++r) {
    const auto start = Clock::now();
    sink += lepage_statistic(reference, window);
    const double elapsed = seconds_since(start);
    if (r > 0) samples.push_back(elapsed);
  }
  g_sink = sink;
  return {"lepage-ref", n, median(samples), repeats, true};
}

}  // namespace sns
