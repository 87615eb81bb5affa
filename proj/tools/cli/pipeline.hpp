#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sns/calibration.hpp"
#include "sns/charts.hpp"
#include "sns/convention.hpp"
#include "sns/scorer.hpp"

namespace sns::cli {

/// Invalid flag combination; maps to exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad input data; maps to exit code 2. `line` is 1-based.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct RunConfig {
  ScorerVariant variant = ScorerVariant::individual;
  std::size_t m = 0;  // batched variants
  std::optional<double> theta;
  std::optional<double> f_theta;
  ScoringConvention convention;
  std::optional<std::size_t> window;
  std::optional<ChartConfig> chart;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
  std::size_t values_per_line() const { return is_batched(variant) ? m : 1; }
};

/// Column order of every scored row.
inline constexpr const char* kCsvHeader = "index,batch,within,raw,rank,p,z,statistic,limit,signal";

/// Fixed-point with 6 decimals (round half to even on exact ties, as printf
/// does); "-0.000000" is printed as "0.000000".
std::string format_fixed(double v, int decimals = 6);

/// Parses one input line into exactly `expected` finite reals separated by
/// commas (whitespace allowed). Throws DataError naming `line_no`.
std::vector<double> parse_values(const std::string& line, std::size_t expected, std::size_t line_no);

struct ChartSummary {
  std::size_t steps = 0;
  std::optional<std::size_t> signal_step;
  std::optional<std::size_t> signal_observation;
  std::vector<ChartPoint> path;  // kept only when requested
};

/// Reads the input stream line by line, scores it, optionally charts it,
/// and writes CSV rows as it goes. Returns the chart summary.
ChartSummary run_pipeline(std::istream& in, std::ostream& out, const RunConfig& config,
                          bool keep_path);

/// Summary line appended by the chart command.
std::string summary_line(const ChartSummary& summary);

}  // namespace sns::cli
