#include "sns/charts.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sns/streams.hpp"

namespace {

const std::vector<double> kWorkedZ{0.0000, 0.6745, -0.9674, -0.3186, 0.5244,
                                   1.3830, 0.7916, 1.5341, -0.2822, 0.1257};

TEST(CusumMean, WorkedExamplePath) {
  // Hand recursion C+ = max(0, C+ + z - 0.25) over the 4-decimal scores.
  const std::vector<double> expected{0.0, 0.4245, 0.0, 0.0, 0.2744, 1.4074, 1.9490, 3.2331, 2.7009, 2.5766};
  sns::CusumMean chart(0.25, 7.267);
  sns::ChartVerdict verdict;
  for (double z : kWorkedZ) verdict.record(chart.step(z));
  ASSERT_EQ(verdict.path.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(verdict.path[k].value, expected[k], 1e-9) << k;
    EXPECT_DOUBLE_EQ(verdict.path[k].limit, 7.267);
  }
  EXPECT_FALSE(verdict.signaled());
  EXPECT_EQ(chart.last_zero_plus(), 4u);
}

TEST(CusumMean, ZeroStreamStaysAtZero) {
  sns::CusumMean chart(0.5, 4.0, sns::CusumSide::both);
  for (int k = 0; k < 1000; ++k) {
    const auto p = chart.step(0.0);
    ASSERT_EQ(p.value, 0.0);
    ASSERT_FALSE(p.signal);
  }
}

TEST(CusumMean, OneStepExceedance) {
  sns::CusumMean chart(0.25, 5.0);
  EXPECT_TRUE(chart.step(5.0 + 0.25 + 1.0).signal);
  sns::CusumMean lower(0.25, 5.0, sns::CusumSide::lower);
  const auto p = lower.step(-6.25 - 0.5);
  EXPECT_TRUE(p.signal);
  EXPECT_DOUBLE_EQ(p.limit, -5.0);
}

TEST(CusumMean, KeepsAccumulatingAfterSignal) {
  sns::CusumMean chart(0.0, 1.0);
  sns::ChartVerdict verdict;
  for (double z : {0.6, 0.6, 0.6, -2.0, 0.1}) verdict.record(chart.step(z));
  EXPECT_EQ(verdict.signal_step, 2u);
  EXPECT_NEAR(verdict.path[2].value, 1.8, 1e-12);
  EXPECT_EQ(verdict.path[3].value, 0.0);
  EXPECT_EQ(verdict.path.size(), 5u);
}

TEST(CusumMean, TwoSidedMirror) {
  sns::UniformStream u(5, 0);
  sns::CusumMean a(0.0, 3.0, sns::CusumSide::both);
  sns::CusumMean b(0.0, 3.0, sns::CusumSide::both);
  for (int k = 0; k < 1000; ++k) {
    const double z = u.draw(sns::Distribution::normal);
    a.step(z);
    b.step(-z);
    ASSERT_EQ(a.c_plus(), -b.c_minus());
    ASSERT_EQ(a.c_minus(), -b.c_plus());
  }
}

TEST(CusumMean, InvalidParameters) {
  EXPECT_THROW(sns::CusumMean(-0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(sns::CusumMean(0.1, 0.0), std::invalid_argument);
  EXPECT_THROW(sns::parse_cusum_side("sideways"), std::invalid_argument);
}

TEST(CusumVariance, IdenticalScoresDecreaseByK) {
  sns::CusumVariance chart(0.793, -1.645);
  const std::vector<double> flat(10, 0.3);
  const std::vector<double> expected{-0.793, -1.586, -2.379};
  for (std::size_t t = 0; t < 3; ++t) {
    const auto p = chart.step(flat);
    EXPECT_NEAR(p.value, expected[t], 1e-12);
    EXPECT_EQ(p.signal, t == 2);
  }
  EXPECT_EQ(chart.last_zero(), 0u);
}

TEST(CusumVariance, VarianceEqualToKHoldsSum) {
  // Batch {-1, 1}: sample variance 2 with divisor m - 1.
  sns::CusumVariance chart(2.0, -1.0);
  chart.step(std::vector<double>{0.0, 0.0});
  for (int k = 0; k < 100; ++k) {
    const auto p = chart.step(std::vector<double>{-1.0, 1.0});
    ASSERT_DOUBLE_EQ(p.value, -2.0);
  }
  sns::CusumVariance never(2.0, -0.5);
  for (int k = 0; k < 100; ++k) ASSERT_FALSE(never.step(std::vector<double>{-1.0, 1.0}).signal);
}

TEST(CusumVariance, ChangePointIsLastZero) {
  sns::CusumVariance chart(1.0, -3.0);
  chart.step(std::vector<double>{-2.0, 2.0});  // s2 = 8
  chart.step(std::vector<double>{-2.0, 2.0});
  chart.step(std::vector<double>{0.1, 0.1});   // s2 = 0
  chart.step(std::vector<double>{0.1, 0.1});
  EXPECT_EQ(chart.last_zero(), 2u);
}

TEST(CusumVariance, Errors) {
  sns::CusumVariance chart(0.793, -1.645);
  EXPECT_THROW(chart.step(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(sns::CusumVariance(0.793, 1.0), std::invalid_argument);
}

TEST(CusumVarianceK, ReferenceValue) {
  EXPECT_NEAR(sns::cusum_variance_k(1.0, 0.8), 0.793, 5e-4);
  EXPECT_DOUBLE_EQ(sns::cusum_variance_k(1.0, 0.8), sns::cusum_variance_k(0.8, 1.0));
  // Limit sigma0 -> sigma1 is sigma^2.
  EXPECT_NEAR(sns::cusum_variance_k(1.0 + 1e-6, 1.0), 1.0, 1e-5);
  EXPECT_NEAR(sns::cusum_variance_k(2.0 * (1.0 + 1e-6), 2.0), 4.0, 1e-4);
  EXPECT_THROW(sns::cusum_variance_k(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(sns::cusum_variance_k(0.0, 1.0), std::invalid_argument);
}

TEST(Ewma, AsymptoticLimit) {
  sns::Ewma chart(0.1, 2.714, 10);
  EXPECT_NEAR(chart.asymptotic_limit(), 0.1969, 5e-5);
  double prev = 0.0;
  for (std::size_t i = 1; i <= 500; ++i) {
    const double l = chart.limit(i);
    if (i < 150) {
      ASSERT_GT(l, prev) << i;
    } else {
      ASSERT_GE(l, prev) << i;
    }
    prev = l;
  }
  EXPECT_NEAR(chart.limit(500), chart.asymptotic_limit(), 1e-12);
}

TEST(Ewma, StepLimitsMatchClosedForm) {
  sns::Ewma chart(0.2, 3.0, 4);
  std::vector<double> batch{0.1, -0.2, 0.3, 0.0};
  for (std::size_t i = 1; i <= 50; ++i) {
    const auto p = chart.step(batch);
    ASSERT_NEAR(p.limit, chart.limit(i), 1e-14);
  }
}

TEST(Ewma, LambdaOneTracksLatestMean) {
  sns::Ewma chart(1.0, 2.0, 4);
  chart.step(std::vector<double>{1, 1, 1, 1});
  const auto p = chart.step(std::vector<double>{0.5, -0.5, 0.25, 0.75});
  EXPECT_DOUBLE_EQ(p.value, 0.25);
  EXPECT_DOUBLE_EQ(p.limit, 1.0);
}

TEST(Ewma, ZeroScoresNeverSignal) {
  sns::Ewma chart(0.1, 2.714, 3);
  for (int k = 0; k < 1000; ++k) ASSERT_FALSE(chart.step(std::vector<double>(3, 0.0)).signal);
}

TEST(Ewma, Errors) {
  EXPECT_THROW(sns::Ewma(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(sns::Ewma(1.5, 1.0), std::invalid_argument);
  EXPECT_THROW(sns::Ewma(0.5, -1.0), std::invalid_argument);
  sns::Ewma chart(0.5, 1.0, 2);
  EXPECT_THROW(chart.step(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Chart, ReplayIsDeterministic) {
  std::vector<double> z(3000);
  sns::UniformStream u(8, 0);
  for (double& v : z) v = u.draw(sns::Distribution::normal);
  auto replay = [&](sns::Chart chart) {
    std::vector<double> path;
    const std::size_t per = chart.scores_per_step();
    for (std::size_t k = 0; k + per <= z.size(); k += per) {
      path.push_back(chart.step(std::span<const double>(z).subspan(k, per)).value);
    }
    return path;
  };
  EXPECT_EQ(replay(sns::Chart(sns::CusumMean(0.25, 5.0))), replay(sns::Chart(sns::CusumMean(0.25, 5.0))));
  EXPECT_EQ(replay(sns::Chart(sns::CusumVariance(0.793, -1.645), 10)),
            replay(sns::Chart(sns::CusumVariance(0.793, -1.645), 10)));
  EXPECT_EQ(replay(sns::Chart(sns::Ewma(0.1, 2.714, 10))), replay(sns::Chart(sns::Ewma(0.1, 2.714, 10))));
}

TEST(Chart, ConsistencyChecks) {
  EXPECT_THROW(sns::Chart(sns::CusumVariance(1.0, -1.0), 1), std::invalid_argument);
  sns::Chart c(sns::CusumMean(0.25, 5.0));
  EXPECT_THROW(c.step(std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

}  // namespace
