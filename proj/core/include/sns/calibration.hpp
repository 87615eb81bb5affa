#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sns/charts.hpp"
#include "sns/convention.hpp"
#include "sns/streams.hpp"

namespace sns {

enum class ChartType { cusum_mean, cusum_variance, ewma };

ChartType parse_chart_type(const std::string& name);
std::string to_string(ChartType t);

/// Chart parameters. The free limit used by calibration is `h` for the CUSUM
/// charts and `rho` for EWMA.
struct ChartConfig {
  ChartType type = ChartType::cusum_mean;
  CusumSide side = CusumSide::upper;
  double k = 0.25;
  double h = 5.0;       // > 0 for CUSUM mean, < 0 for variance CUSUM
  double lambda = 0.1;
  double rho = 3.0;
  std::size_t m = 1;    // scores per chart step for the batch charts

  Chart make_chart() const;
  std::size_t scores_per_step() const noexcept { return type == ChartType::cusum_mean ? 1 : m; }

  /// Magnitude of the free limit; run length is nondecreasing in it.
  double free_limit() const noexcept;
  void set_free_limit(double magnitude);
};

enum class ScorerVariant { individual, batched, conditional_individual, conditional_batched };

ScorerVariant parse_variant(const std::string& name);
std::string to_string(ScorerVariant v);
inline bool is_batched(ScorerVariant v) {
  return v == ScorerVariant::batched || v == ScorerVariant::conditional_batched;
}
inline bool is_conditional(ScorerVariant v) {
  return v == ScorerVariant::conditional_individual || v == ScorerVariant::conditional_batched;
}

/// Where chart inputs come from in a simulation.
struct StreamModel {
  enum class Kind { exact_normal, sns };

  Kind kind = Kind::exact_normal;
  Distribution distribution = Distribution::normal;
  ScorerVariant variant = ScorerVariant::individual;
  std::size_t batch_size = 10;   // batched variants
  double f_theta = 0.5;          // conditional variants; theta = quantile(distribution, f_theta)
  ScoringConvention convention;
  std::optional<std::size_t> window;

  // Out-of-control injection: observations after `change_point` are replaced
  // by shift + scale * x. change_point == 0 disables it.
  std::size_t change_point = 0;
  double shift = 0.0;
  double scale = 1.0;

  static StreamModel exact_normal() { return {}; }
  static StreamModel sns(Distribution d, ScorerVariant v = ScorerVariant::individual) {
    StreamModel s;
    s.kind = Kind::sns;
    s.distribution = d;
    s.variant = v;
    return s;
  }
};

struct RunLengths {
  std::vector<std::size_t> lengths;  // censored runs are recorded as `cap`
  std::size_t censored = 0;
  std::size_t cap = 0;
};

struct ArlEstimate {
  double mean_rl = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
  std::size_t truncation_cap = 0;
  double censored_fraction = 0.0;

  /// Estimates with 5% or more censored runs are not trustworthy.
  bool valid() const noexcept { return censored_fraction < 0.05; }
};

ArlEstimate summarize(const RunLengths& runs);

/// Run length of every replication. Replication r uses the uniform stream
/// derived from (seed, r), so the result is reproducible bit-for-bit and
/// independent of `threads` (0 = hardware concurrency).
RunLengths simulate_run_lengths(const ChartConfig& chart, const StreamModel& model,
                                std::size_t replications, std::size_t cap, std::uint64_t seed,
                                unsigned threads = 0);

/// Monte-Carlo average run length. Requires replications >= 100 and cap >= 1.
ArlEstimate estimate_arl(const ChartConfig& chart, const StreamModel& model,
                         std::size_t replications, std::size_t cap, std::uint64_t seed,
                         unsigned threads = 0);

struct CalibrationTarget {
  ChartConfig chart;        // the free limit is searched over
  double target_arl0 = 370.0;
  StreamModel model;
  double tolerance = 0.02;  // relative
  std::size_t replications = 10000;
  std::optional<std::size_t> cap;                      // default 50 x target
  std::optional<std::pair<double, double>> bracket;    // free-limit magnitudes
};

struct CalibrationResult {
  double limit = 0.0;  // signed chart limit (h or rho)
  ArlEstimate estimate;
  std::size_t evaluations = 0;
};

/// Searches the free limit until |ARL0 - target| / target <= tolerance,
/// using common random numbers for every evaluation. Without a bracket the
/// search expands geometrically from the chart's current limit. Throws
/// std::runtime_error (with the ARLs found at both ends) when the bracket
/// does not contain the target.
CalibrationResult calibrate_limit(const CalibrationTarget& target, std::uint64_t seed,
                                  unsigned threads = 0);

struct ArlComparison {
  ArlEstimate normal;  // exact N(0, 1) inputs fed to the chart directly
  ArlEstimate sns;     // raw draws from `distribution` turned into scores
  double ratio = 0.0;  // sns.mean_rl / normal.mean_rl
};

ArlComparison compare_sns_vs_normal(const ChartConfig& chart, const StreamModel& sns_model,
                                    std::size_t replications, std::size_t cap,
                                    std::uint64_t seed, unsigned threads = 0);

}  // namespace sns
