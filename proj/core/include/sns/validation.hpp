#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sns/normal.hpp"
#include "sns/streams.hpp"

namespace sns {

/// Exact standard deviation of the i-th score when the sequential rank is
/// uniform on 1..i and P = (r - 1 + b/2) / (i - 1 + b). The mean is exactly
/// zero, so this is the root mean square over the i equally likely ranks.
double exact_sd_zn(std::size_t i, double b);

/// Exact variance of P_i by enumeration over the i equally likely ranks.
double enumerated_variance_of_p(std::size_t i, double b);

/// b such that exact_sd_zn(i, b) == 1, by bisection on (0.05, 2).
double solve_b_for_unit_sd(std::size_t i);

/// b ~= 0.824 - 0.792 / i.
double b_approximation(std::size_t i);

struct Table1Row {
  std::size_t i = 0;
  double sd_b1 = 0.0;
  double b_for_unit_sd = 0.0;
  double b_approx = 0.0;
  double sd_with_b_approx = 0.0;
};

Table1Row table1_row(std::size_t i);

/// Rows for i in {2, 3, 4, 5, 10, 20, 30, 31, 32, 100, 1000, 5000}.
std::vector<Table1Row> table1();
std::span<const std::size_t> table1_indices();

/// 401 points on [-4, 4].
std::vector<double> default_ecdf_grid();

struct EcdfSummary {
  std::vector<double> grid;
  std::vector<double> mean_ecdf;  // average fraction of scores <= grid[k]
  std::size_t n = 0;
  std::size_t replications = 0;
  double max_abs_deviation = 0.0;  // max_k |mean_ecdf[k] - Phi(grid[k])|
  double mean_below_zero = 0.0;    // average fraction of scores < 0
  double mean_at_zero = 0.0;       // average fraction of scores == 0 (jump size at 0)
};

/// Averages the empirical CDFs of the first n individual rankit scores over
/// independent simulated streams. Requires replications >= 100.
EcdfSummary mean_ecdf_study(std::size_t n, std::size_t replications, std::span<const double> grid,
                            std::uint64_t seed, Distribution distribution = Distribution::normal);

struct PathCheckpoint {
  std::size_t n = 0;
  AdResult ad;
};

/// Scores one simulated path and runs the Anderson-Darling N(0, 1) test on
/// the scores observed so far at each checkpoint (strictly increasing, each
/// >= 8). With `raw_normal_scores` the path is plain N(0, 1) draws instead of
/// scores. A positive `shift` is added to raw values after the midpoint of
/// the last checkpoint.
std::vector<PathCheckpoint> path_gof_study(std::span<const std::size_t> checkpoints,
                                           std::uint64_t seed,
                                           Distribution distribution = Distribution::normal,
                                           bool raw_normal_scores = false, double shift = 0.0);

}  // namespace sns
