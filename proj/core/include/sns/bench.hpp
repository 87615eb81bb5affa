#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sns {

/// Timing of one method at stream length n. `median_seconds` is the median
/// over `repeats` timed runs after one discarded warm-up run.
struct BenchResult {
  std::string method;
  std::size_t n = 0;
  double median_seconds = 0.0;
  std::size_t repeats = 0;
  bool feasible = true;  // false when n is beyond the method's policy cap
};

/// Largest stream the Mann-Whitney change-point baseline is run on.
inline constexpr std::size_t kMwMaxN = 10000;
/// Reference and window sizes of the Lepage baseline.
inline constexpr std::size_t kLepageReference = 500;
inline constexpr std::size_t kLepageWindow = 500;

/// Cost of producing the statistic for observation n in an online monitor
/// that has already absorbed n - 1 observations: one rank-store update.
/// Averaged over a block of updates ending at n.
BenchResult bench_sns(std::size_t n, std::size_t repeats, std::uint64_t seed,
                      std::optional<std::size_t> window = std::nullopt);

/// Time to score all n observations from an empty scorer.
BenchResult bench_sns_cumulative(std::size_t n, std::size_t repeats, std::uint64_t seed,
                                 std::optional<std::size_t> window = std::nullopt);

/// One evaluation at length n of a Mann-Whitney change-point scan that
/// re-ranks all n values and recomputes every split from scratch.
BenchResult bench_baseline_mw(std::size_t n, std::size_t repeats, std::uint64_t seed);

/// One evaluation at length n of a Lepage statistic comparing the first
/// kLepageReference values against the last kLepageWindow values, with the
/// pooled sample fully re-ranked.
BenchResult bench_baseline_lepage(std::size_t n, std::size_t repeats, std::uint64_t seed);

/// Midranks (1-based) of `values`.
std::vector<double> midranks(std::span<const double> values);

struct ChangePointScan {
  double statistic = 0.0;  // max over splits of |standardized Mann-Whitney U|
  std::size_t split = 0;   // size of the first segment at the maximum
};

/// Naive O(n^2) scan over all split points.
ChangePointScan mann_whitney_changepoint(std::span<const double> values);

/// Lepage statistic: squared standardized Wilcoxon rank sum plus squared
/// standardized Ansari-Bradley statistic of `window` within the pooled sample.
double lepage_statistic(std::span<const double> reference, std::span<const double> window);

}  // namespace sns
