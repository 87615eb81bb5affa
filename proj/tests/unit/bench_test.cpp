#include "sns/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace {

TEST(Midranks, TiesShareAverageRank) {
  const std::vector<double> x{3.0, 1.0, 2.0, 2.0};
  EXPECT_EQ(sns::midranks(x), (std::vector<double>{4.0, 1.0, 2.5, 2.5}));
}

TEST(MannWhitney, HandCountedSplit) {
  // Split after 3: U = 0, mean 4.5, variance 3 * 3 * 7 / 12.
  const std::vector<double> x{1, 2, 3, 10, 11, 12};
  const auto scan = sns::mann_whitney_changepoint(x);
  EXPECT_EQ(scan.split, 3u);
  EXPECT_NEAR(scan.statistic, 4.5 / std::sqrt(5.25), 1e-12);
}

TEST(Lepage, HandCountedStatistic) {
  // Window ranks {3, 4} of 4: W = 7 against mean 5 and variance 5/3; the
  // Ansari-Bradley score 2 + 1 equals its mean 3.
  const std::vector<double> ref{1, 2};
  const std::vector<double> win{3, 4};
  EXPECT_NEAR(sns::lepage_statistic(ref, win), 4.0 / (5.0 / 3.0), 1e-12);
  EXPECT_THROW(sns::lepage_statistic(ref, std::vector<double>{}), std::invalid_argument);
}

TEST(Bench, MwInfeasibleBeyondCap) {
  const auto r = sns::bench_baseline_mw(sns::kMwMaxN + 1, 1, 1);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(std::isnan(r.median_seconds));
  EXPECT_TRUE(sns::bench_baseline_mw(200, 1, 1).feasible);
}

TEST(Bench, SnsUpdateIsCheap) {
  const auto r = sns::bench_sns(100, 5, 1);
  EXPECT_EQ(r.method, "sns");
  EXPECT_LT(r.median_seconds, 1e-3);
  EXPECT_EQ(sns::bench_sns(1000, 3, 1, 100).method, "sns-window");
}

TEST(Bench, SnsFasterThanLepage) {
  const auto sns_r = sns::bench_sns(10000, 5, 3);
  const auto lep = sns::bench_baseline_lepage(10000, 5, 3);
  EXPECT_LT(sns_r.median_seconds, lep.median_seconds);
  EXPECT_THROW(sns::bench_baseline_lepage(999, 1, 1), std::invalid_argument);
}

TEST(Bench, CumulativeCoversWholeStream) {
  const auto r = sns::bench_sns_cumulative(5000, 3, 1);
  EXPECT_EQ(r.method, "sns-cumulative");
  EXPECT_EQ(r.n, 5000u);
  EXPECT_GT(r.median_seconds, 0.0);
}

}  // namespace
