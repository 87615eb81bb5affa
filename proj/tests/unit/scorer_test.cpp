#include "sns/scorer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace {

double round4(double v) { return std::round(v * 1e4) / 1e4; }

TEST(IndividualScorer, WorkedExample) {
  const std::vector<double> x{4.6, 5.1, 3.9, 4.4, 4.8, 6.6, 5.3, 8.3, 4.7, 5.0};
  const std::vector<double> ranks{1, 2, 1, 2, 4, 6, 6, 8, 4, 6};
  const std::vector<double> p{0.5000, 0.7500, 0.1667, 0.3750, 0.7000, 0.9167, 0.7857, 0.9375, 0.3889, 0.5500};
  const std::vector<double> z{0.0000, 0.6745, -0.9674, -0.3186, 0.5244, 1.3830, 0.7916, 1.5341, -0.2822, 0.1257};
  sns::IndividualScorer scorer;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto s = scorer.score(x[k]);
    EXPECT_EQ(s.index, k + 1);
    EXPECT_DOUBLE_EQ(s.rank, ranks[k]);
    EXPECT_DOUBLE_EQ(round4(s.p), p[k]) << k;
    EXPECT_DOUBLE_EQ(round4(s.z), z[k]) << k;
  }
  EXPECT_EQ(scorer.count(), 10u);
  EXPECT_EQ(scorer.store().size(), 10u);
}

TEST(IndividualScorer, FirstScoreIsZero) {
  for (double x : {-1e9, 0.0, 3.7}) {
    sns::IndividualScorer scorer;
    const auto s = scorer.score(x);
    EXPECT_DOUBLE_EQ(s.p, 0.5);
    EXPECT_DOUBLE_EQ(s.z, 0.0);
  }
}

TEST(IndividualScorer, TiesUseMidrank) {
  sns::IndividualScorer scorer;
  scorer.score(1.0);
  const auto s = scorer.score(1.0);
  EXPECT_DOUBLE_EQ(s.rank, 1.5);
  EXPECT_DOUBLE_EQ(s.p, 0.5);
  EXPECT_DOUBLE_EQ(s.z, 0.0);
}

TEST(IndividualScorer, RejectsNonFinite) {
  sns::IndividualScorer scorer;
  EXPECT_THROW(scorer.score(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  EXPECT_EQ(scorer.count(), 0u);
}

TEST(IndividualScorer, WindowUsesEffectiveCount) {
  sns::IndividualScorer scorer(sns::ScoringConvention::rankit(), 3);
  for (double x : {1.0, 2.0, 3.0, 4.0}) scorer.score(x);
  // Window now holds {2, 3, 4}; 2.5 has one smaller value among 3.
  const auto s = scorer.score(2.5);
  EXPECT_DOUBLE_EQ(s.rank, 2.0);
  EXPECT_DOUBLE_EQ(s.p, 1.5 / 4.0);
  EXPECT_EQ(scorer.store().size(), 3u);
}

TEST(IndividualScorer, AdaptiveConvention) {
  sns::IndividualScorer scorer(sns::ScoringConvention::adaptive());
  EXPECT_DOUBLE_EQ(scorer.score(1.0).p, 0.5);
  const double b = 0.824 - 0.792 / 2.0;
  EXPECT_DOUBLE_EQ(scorer.score(0.0).p, (0.5 * b) / (1.0 + b));
}

TEST(BatchScorer, FirstBatchWithinRanks) {
  sns::BatchScorer scorer(3);
  const std::vector<double> b1{5.0, 3.0, 4.0};
  const auto s = scorer.score(b1);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0].rank, 3.0);
  EXPECT_DOUBLE_EQ(s[1].rank, 1.0);
  EXPECT_DOUBLE_EQ(s[2].rank, 2.0);
  EXPECT_NEAR(s[0].p, 2.5 / 3.0, 1e-15);
  EXPECT_NEAR(s[1].p, 0.5 / 3.0, 1e-15);
  EXPECT_NEAR(s[2].p, 0.5, 1e-15);
  EXPECT_EQ(s[2].batch, 1u);
  EXPECT_EQ(s[2].within, 3u);
}

TEST(BatchScorer, LaterBatchesIgnoreEachOther) {
  sns::BatchScorer scorer(3);
  scorer.score(std::vector<double>{5.0, 3.0, 4.0});
  const auto s = scorer.score(std::vector<double>{4.5, 2.0, 6.0});
  EXPECT_DOUBLE_EQ(s[0].rank, 3.0);
  EXPECT_DOUBLE_EQ(s[1].rank, 1.0);
  EXPECT_DOUBLE_EQ(s[2].rank, 4.0);
  EXPECT_DOUBLE_EQ(s[0].p, 0.625);
  EXPECT_DOUBLE_EQ(s[1].p, 0.125);
  EXPECT_DOUBLE_EQ(s[2].p, 0.875);
  EXPECT_EQ(s[0].index, 4u);
  EXPECT_EQ(scorer.store().size(), 6u);
}

TEST(BatchScorer, SmallestValueGetsRankOne) {
  const std::size_t m = 4;
  sns::BatchScorer scorer(m);
  scorer.score(std::vector<double>{10, 11, 12, 13});
  const auto s = scorer.score(std::vector<double>{1, 1, 1, 1});
  for (const auto& v : s) {
    EXPECT_DOUBLE_EQ(v.rank, 1.0);
    EXPECT_DOUBLE_EQ(v.p, 0.5 / (m + 1));
  }
}

TEST(BatchScorer, Errors) {
  EXPECT_THROW(sns::BatchScorer(1), std::invalid_argument);
  sns::BatchScorer scorer(3);
  EXPECT_THROW(scorer.score(std::vector<double>{1, 2}), std::invalid_argument);
  EXPECT_THROW(scorer.score(std::vector<double>{1, 2, std::numeric_limits<double>::infinity()}),
               std::domain_error);
  EXPECT_EQ(scorer.batches(), 0u);
}

TEST(ConditionalScorer, IndividualSides) {
  sns::ConditionalScorer up(1.0, 0.5);
  const auto s = up.score(2.0);
  EXPECT_DOUBLE_EQ(s.p, 0.75);
  EXPECT_NEAR(s.z, 0.6745, 5e-5);
  EXPECT_EQ(up.n_plus(), 1u);

  sns::ConditionalScorer down(1.0, 0.5);
  const auto t = down.score(0.3);
  EXPECT_DOUBLE_EQ(t.p, 0.25);
  EXPECT_NEAR(t.z, -0.6745, 5e-5);
  EXPECT_EQ(down.n_minus(), 1u);
}

TEST(ConditionalScorer, ValueAtThetaGoesBelow) {
  sns::ConditionalScorer scorer(1.0, 0.3);
  const auto s = scorer.score(1.0);
  EXPECT_DOUBLE_EQ(s.p, 0.3 * 0.5);
  EXPECT_EQ(scorer.n_minus(), 1u);
  EXPECT_EQ(scorer.n_plus(), 0u);
}

TEST(ConditionalScorer, AllAboveThetaGivesPositiveScores) {
  sns::ConditionalScorer scorer(0.0, 0.5);
  for (double x : {3.0, 1.0, 2.0, 0.5, 7.0, 0.1, 0.2, 9.0}) {
    const auto s = scorer.score(x);
    EXPECT_GT(s.p, 0.5);
    EXPECT_LT(s.p, 1.0);
    EXPECT_GT(s.z, 0.0);
    EXPECT_DOUBLE_EQ(s.p, 0.5 + 0.5 * (s.rank - 0.5) / static_cast<double>(scorer.n_plus()));
  }
  EXPECT_EQ(scorer.n_minus() + scorer.n_plus(), 8u);
}

TEST(ConditionalScorer, FirstBatch) {
  sns::ConditionalScorer scorer(0.0, 0.5, 4);
  const auto s = scorer.score(std::vector<double>{-1, -2, 3, 4});
  EXPECT_DOUBLE_EQ(s[0].rank, 2.0);
  EXPECT_DOUBLE_EQ(s[1].rank, 1.0);
  EXPECT_DOUBLE_EQ(s[2].rank, 1.0);
  EXPECT_DOUBLE_EQ(s[3].rank, 2.0);
  EXPECT_DOUBLE_EQ(s[0].p, 0.375);
  EXPECT_DOUBLE_EQ(s[1].p, 0.125);
  EXPECT_DOUBLE_EQ(s[2].p, 0.625);
  EXPECT_DOUBLE_EQ(s[3].p, 0.875);
  EXPECT_EQ(scorer.n_minus(), 2u);
  EXPECT_EQ(scorer.n_plus(), 2u);
}

TEST(ConditionalScorer, SecondBatchUsesPriorBatchesOnly) {
  sns::ConditionalScorer scorer(0.0, 0.5, 4);
  scorer.score(std::vector<double>{-1, -2, 3, 4});
  const auto s = scorer.score(std::vector<double>{-3, -0.5, 5, 3.5});
  // Denominators are N + 1 = 3 on both sides.
  EXPECT_DOUBLE_EQ(s[0].rank, 1.0);
  EXPECT_DOUBLE_EQ(s[0].p, 0.5 * 0.5 / 3.0);
  EXPECT_DOUBLE_EQ(s[1].rank, 3.0);
  EXPECT_DOUBLE_EQ(s[1].p, 0.5 * 2.5 / 3.0);
  EXPECT_DOUBLE_EQ(s[2].rank, 3.0);
  EXPECT_DOUBLE_EQ(s[2].p, 0.5 + 0.5 * 2.5 / 3.0);
  EXPECT_DOUBLE_EQ(s[3].rank, 2.0);
  EXPECT_DOUBLE_EQ(s[3].p, 0.5 + 0.5 * 1.5 / 3.0);
  EXPECT_EQ(s[3].batch, 2u);
  EXPECT_EQ(s[3].index, 8u);
}

TEST(ConditionalScorer, MaximalRankInLaterBatch) {
  const double f = 0.4;
  sns::ConditionalScorer scorer(0.0, f, 3);
  scorer.score(std::vector<double>{1, 2, -1});
  scorer.score(std::vector<double>{3, -2, 0.5});
  const double k = static_cast<double>(scorer.n_plus());
  const auto s = scorer.score(std::vector<double>{100, -5, -6});
  EXPECT_DOUBLE_EQ(s[0].p, f + (1 - f) * (k + 0.5) / (k + 1));
}

TEST(ConditionalScorer, EmptySideInFirstBatchThenFirstUpperValue) {
  sns::ConditionalScorer scorer(0.0, 0.5, 4);
  const auto first = scorer.score(std::vector<double>{-1, -2, -3, -4});
  for (const auto& v : first) EXPECT_LT(v.p, 0.5);
  const auto second = scorer.score(std::vector<double>{5, -5, -0.5, 6});
  EXPECT_DOUBLE_EQ(second[0].p, 0.5 + 0.5 * 0.5);
  EXPECT_DOUBLE_EQ(second[3].p, 0.5 + 0.5 * 0.5);
}

TEST(ConditionalScorer, Errors) {
  EXPECT_THROW(sns::ConditionalScorer(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(sns::ConditionalScorer(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(sns::ConditionalScorer(std::numeric_limits<double>::infinity(), 0.5), std::invalid_argument);
  sns::ConditionalScorer batched(0.0, 0.5, 3);
  EXPECT_THROW(batched.score(1.0), std::logic_error);
  EXPECT_THROW(batched.score(std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(ConditionalScorer, SharedWindowAcrossSides) {
  sns::ConditionalScorer scorer(0.0, 0.5, 1, sns::ScoringConvention::rankit(), 3);
  for (double x : {-1.0, 2.0, 3.0, 4.0}) scorer.score(x);
  // -1 was evicted, so the lower side is empty again.
  EXPECT_EQ(scorer.n_minus(), 0u);
  EXPECT_EQ(scorer.n_plus(), 3u);
  EXPECT_DOUBLE_EQ(scorer.score(-0.5).p, 0.25);
}

}  // namespace
