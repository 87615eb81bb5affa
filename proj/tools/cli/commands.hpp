#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sns/calibration.hpp"

namespace sns::cli {

void write_table1(std::ostream& out, int decimals = 6);

struct CalibrateOptions {
  CalibrationTarget target;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};
void write_calibration(std::ostream& out, const CalibrateOptions& options);

struct ArlOptions {
  ChartConfig chart;
  StreamModel model;
  std::size_t replications = 10000;
  std::optional<std::size_t> cap;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool compare = false;  // exact-normal vs SNS side by side
};
void write_arl(std::ostream& out, const ArlOptions& options);

struct EcdfOptions {
  std::size_t n = 30;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  Distribution distribution = Distribution::normal;
};
void write_ecdf_study(std::ostream& out, const EcdfOptions& options);

struct PathOptions {
  std::vector<std::size_t> checkpoints{100, 300, 1000, 3000};
  std::uint64_t seed = 1;
  Distribution distribution = Distribution::normal;
};
void write_path_study(std::ostream& out, const PathOptions& options);

struct BenchOptions {
  std::vector<std::string> methods{"sns", "lepage"};
  std::vector<std::size_t> sizes{1000, 10000};
  std::size_t repeats = 5;
  std::uint64_t seed = 1;
  std::size_t window = 1000;  // for sns-window and sns-window-cumulative
};
/// One CSV row (method,n,median_seconds,repeats) per method and size.
void write_bench(std::ostream& out, const BenchOptions& options);

/// Parses sizes such as "1000", "1e4" or "2.5e3" into exact integers.
std::size_t parse_size(const std::string& text);

}  // namespace sns::cli
