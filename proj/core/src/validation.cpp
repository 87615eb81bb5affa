#include "sns/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "sns/scorer.hpp"

namespace sns {

double exact_sd_zn(std::size_t i, double b) {
  if (i < 2) throw std::invalid_argument("exact_sd_zn: i must be >= 2");
  if (!(b > 0.0)) throw std::invalid_argument("exact_sd_zn: b must be > 0");
  const double denom = static_cast<double>(i) - 1.0 + b;
  double acc = 0.0;
  for (std::size_t r = 1; r <= i; ++r) {
    const double z = phi_inverse((static_cast<double>(r) - 1.0 + 0.5 * b) / denom);
    acc += z * z;
  }
  return std::sqrt(acc / static_cast<double>(i));
}

double enumerated_variance_of_p(std::size_t i, double b) {
  if (i < 2) throw std::invalid_argument("enumerated_variance_of_p: i must be >= 2");
  const double denom = static_cast<double>(i) - 1.0 + b;
  double mean = 0.0;
  for (std::size_t r = 1; r <= i; ++r) mean += (static_cast<double>(r) - 1.0 + 0.5 * b) / denom;
  mean /= static_cast<double>(i);
  double acc = 0.0;
  for (std::size_t r = 1; r <= i; ++r) {
    const double d = (static_cast<double>(r) - 1.0 + 0.5 * b) / denom - mean;
    acc += d * d;
  }
  return acc / static_cast<double>(i);
}

double solve_b_for_unit_sd(std::size_t i) {
  if (i < 2) throw std::invalid_argument("solve_b_for_unit_sd: i must be >= 2");
  // sd decreases in b: a larger b pulls every P towards 1/2.
  double lo = 0.05;
  double hi = 2.0;
  if (!(exact_sd_zn(i, lo) > 1.0 && exact_sd_zn(i, hi) < 1.0)) {
    throw std::runtime_error("solve_b_for_unit_sd: root not bracketed in (0.05, 2)");
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (exact_sd_zn(i, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double b_approximation(std::size_t i) {
  if (i < 2) throw std::invalid_argument("b_approximation: i must be >= 2");
  return 0.824 - 0.792 / static_cast<double>(i);
}

Table1Row table1_row(std::size_t i) {
  Table1Row row;
  row.i = i;
  row.sd_b1 = exact_sd_zn(i, 1.0);
  row.b_for_unit_sd = solve_b_for_unit_sd(i);
  row.b_approx = b_approximation(i);
  row.sd_with_b_approx = exact_sd_zn(i, row.b_approx);
  return row;
}

namespace {
constexpr std::array<std::size_t, 12> kTable1Indices = {2, 3, 4, 5, 10, 20, 30, 31, 32, 100, 1000, 5000};
}

std::span<const std::size_t> table1_indices() { return kTable1Indices; }

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  rows.reserve(kTable1Indices.size());
  for (std::size_t i : kTable1Indices) rows.push_back(table1_row(i));
  return rows;
}

std::vector<double> default_ecdf_grid() {
  std::vector<double> grid(401);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = -4.0 + 0.02 * static_cast<double>(k);
  }
  grid[200] = 0.0;
  return grid;
}

EcdfSummary mean_ecdf_study(std::size_t n, std::size_t replications, std::span<const double> grid,
                            std::uint64_t seed, Distribution distribution) {
  if (replications < 100) throw std::invalid_argument("mean_ecdf_study: need >= 100 replications");
  if (n == 0) throw std::invalid_argument("mean_ecdf_study: n must be >= 1");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("mean_ecdf_study: grid must be sorted");
  }

  EcdfSummary out;
  out.grid.assign(grid.begin(), grid.end());
  out.mean_ecdf.assign(grid.size(), 0.0);
  out.n = n;
  out.replications = replications;

  std::vector<double> z(n);
  for (std::size_t r = 0; r < replications; ++r) {
    UniformStream uniforms(seed, r);
    IndividualScorer scorer;
    for (double& v : z) v = scorer.score(uniforms.draw(distribution)).z;
    std::sort(z.begin(), z.end());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto le = std::upper_bound(z.begin(), z.end(), grid[k]) - z.begin();
      out.mean_ecdf[k] += static_cast<double>(le);
    }
    const auto below = std::lower_bound(z.begin(), z.end(), 0.0) - z.begin();
    const auto at_or_below = std::upper_bound(z.begin(), z.end(), 0.0) - z.begin();
    out.mean_below_zero += static_cast<double>(below);
    out.mean_at_zero += static_cast<double>(at_or_below - below);
  }
  const double total = static_cast<double>(n) * static_cast<double>(replications);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.mean_ecdf[k] /= total;
    out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(out.mean_ecdf[k] - phi(grid[k])));
  }
  out.mean_below_zero /= total;
  out.mean_at_zero /= total;
  return out;
}

std::vector<PathCheckpoint> path_gof_study(std::span<const std::size_t> checkpoints,
                                           std::uint64_t seed, Distribution distribution,
                                           bool raw_normal_scores, double shift) {
  if (checkpoints.empty()) return {};
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] < 8) throw std::invalid_argument("path_gof_study: checkpoints must be >= 8");
    if (k > 0 && checkpoints[k] <= checkpoints[k - 1]) {
      throw std::invalid_argument("path_gof_study: checkpoints must be strictly increasing");
    }
  }
  const std::size_t n = checkpoints.back();
  const std::size_t change = n / 2;

  UniformStream uniforms(seed, 0);
  IndividualScorer scorer;
  std::vector<double> z;
  z.reserve(n);
  std::vector<PathCheckpoint> out;
  std::size_t next = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    if (raw_normal_scores) {
      z.push_back(phi_inverse_unchecked(uniforms.next()) + (t > change ? shift : 0.0));
    } else {
      const double x = uniforms.draw(distribution) + (t > change ? shift : 0.0);
      z.push_back(scorer.score(x).z);
    }
    if (t == checkpoints[next]) {
      out.push_back({t, anderson_darling_n01(z)});
      ++next;
    }
  }
  return out;
}

}  // namespace sns
