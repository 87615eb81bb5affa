#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sns {

/// One step of a chart: the plotted statistic, the limit it is compared to,
/// and whether it is beyond that limit at this step.
struct ChartPoint {
  std::size_t step = 0;
  double value = 0.0;
  double limit = 0.0;
  bool signal = false;
};

/// Full statistic path plus the first signal. Engines never reset after a
/// signal; the path keeps accumulating.
struct ChartVerdict {
  std::vector<ChartPoint> path;
  std::optional<std::size_t> signal_step;

  bool signaled() const noexcept { return signal_step.has_value(); }
  void record(const ChartPoint& point);
};

enum class CusumSide { upper, lower, both };

CusumSide parse_cusum_side(const std::string& name);

/// Tabular CUSUM for a shift in the mean of standard normal scores.
///   upper: C+ = max(0, C+ + z - k), signal when C+ > h
///   lower: C- = min(0, C- + z + k), signal when C- < -h
class CusumMean {
 public:
  CusumMean(double k, double h, CusumSide side = CusumSide::upper);

  ChartPoint step(double z);

  double c_plus() const noexcept { return c_plus_; }
  double c_minus() const noexcept { return c_minus_; }
  std::size_t steps() const noexcept { return t_; }
  /// Most recent step at which each sum was zero (change-point estimate).
  std::size_t last_zero_plus() const noexcept { return last_zero_plus_; }
  std::size_t last_zero_minus() const noexcept { return last_zero_minus_; }
  double k() const noexcept { return k_; }
  double h() const noexcept { return h_; }
  CusumSide side() const noexcept { return side_; }
  void set_h(double h);

 private:
  double k_;
  double h_;
  CusumSide side_;
  double c_plus_ = 0.0;
  double c_minus_ = 0.0;
  std::size_t t_ = 0;
  std::size_t last_zero_plus_ = 0;
  std::size_t last_zero_minus_ = 0;
};

/// CUSUM for a decrease in the variance of batched scores:
///   C- = min(0, C- + s^2 - k), signal when C- < h (h < 0),
/// where s^2 is the sample variance of the batch (divisor m - 1).
class CusumVariance {
 public:
  CusumVariance(double k, double h);

  ChartPoint step(std::span<const double> scores);

  double c_minus() const noexcept { return c_minus_; }
  std::size_t steps() const noexcept { return t_; }
  /// Greatest step with C- equal to zero.
  std::size_t last_zero() const noexcept { return last_zero_; }
  double k() const noexcept { return k_; }
  double h() const noexcept { return h_; }
  void set_h(double h);

 private:
  double k_;
  double h_;
  double c_minus_ = 0.0;
  std::size_t t_ = 0;
  std::size_t last_zero_ = 0;
};

/// Reference value of the likelihood-ratio CUSUM for a change in standard
/// deviation from sigma0 to sigma1, returned as a magnitude:
/// |2 ln(sigma0/sigma1) sigma0^2 sigma1^2 / (sigma1^2 - sigma0^2)|.
double cusum_variance_k(double sigma0, double sigma1);

/// EWMA of batch means with exact (time-varying) limits:
///   U_i = lambda * mean(batch) + (1 - lambda) U_{i-1},  U_0 = 0
///   limit_i = rho * sqrt(lambda / (2 - lambda) * (1 - (1 - lambda)^(2i))) * sigma / sqrt(m)
/// with sigma = 1. Signals when |U_i| > limit_i.
class Ewma {
 public:
  Ewma(double lambda, double rho, std::size_t m = 1);

  ChartPoint step(std::span<const double> scores);

  double limit(std::size_t i) const noexcept;
  double asymptotic_limit() const noexcept;
  double statistic() const noexcept { return u_; }
  std::size_t steps() const noexcept { return t_; }
  double lambda() const noexcept { return lambda_; }
  double rho() const noexcept { return rho_; }
  std::size_t batch_size() const noexcept { return m_; }
  void set_rho(double rho);

 private:
  double lambda_;
  double rho_;
  std::size_t m_;
  double decay2_ = 1.0;  // (1 - lambda)^(2t)
  double u_ = 0.0;
  std::size_t t_ = 0;
};

/// Any of the three engines behind one interface. A step consumes
/// `scores_per_step()` scores: 1 for CusumMean, m for the batch charts.
class Chart {
 public:
  using Engine = std::variant<CusumMean, CusumVariance, Ewma>;

  Chart(Engine engine, std::size_t scores_per_step);
  explicit Chart(CusumMean c) : Chart(Engine(std::move(c)), 1) {}
  Chart(CusumVariance c, std::size_t m) : Chart(Engine(std::move(c)), m) {}
  explicit Chart(Ewma e) : Chart(Engine(e), e.batch_size()) {}

  ChartPoint step(std::span<const double> scores);

  std::size_t scores_per_step() const noexcept { return per_step_; }
  const Engine& engine() const noexcept { return engine_; }

 private:
  Engine engine_;
  std::size_t per_step_;
};

}  // namespace sns
