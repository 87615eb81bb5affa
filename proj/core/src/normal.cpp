#include "sns/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace sns {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Acklam's rational approximation to the normal quantile.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLow = 0.02425;

double acklam(double p) noexcept {
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

double phi_raw(double z) noexcept { return 0.5 * std::erfc(-z * kInvSqrt2); }

}  // namespace

double phi_density(double z) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double phi(double z) {
  if (!std::isfinite(z)) throw std::domain_error("phi: argument must be finite");
  return phi_raw(z);
}

double phi_inverse_unchecked(double p) noexcept {
  // Work on the lower half and reflect, so that the result is exactly odd
  // and the Halley step uses the small tail probability (no cancellation).
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  if (tail == 0.5) return 0.0;
  double x = acklam(tail);
  const double e = phi_raw(x) - tail;
  const double u = e / phi_density(x);
  x -= u / (1.0 + 0.5 * x * u);
  return upper ? -x : x;
}

double phi_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("phi_inverse: probability must lie in (0, 1), got " +
                            std::to_string(p));
  }
  return phi_inverse_unchecked(p);
}

double anderson_darling_cdf(double z) noexcept {
  if (z <= 0.0) return 0.0;
  if (z < 2.0) {
    return std::exp(-1.2337141 / z) / std::sqrt(z) *
           (2.00012 +
            (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) *
                z);
  }
  return std::exp(
      -std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) *
                                        z) *
                             z));
}

AdResult anderson_darling_n01(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 8) throw std::invalid_argument("anderson_darling_n01: need at least 8 values");
  std::vector<double> z(sample.begin(), sample.end());
  for (double v : z) {
    if (!std::isfinite(v)) throw std::domain_error("anderson_darling_n01: non-finite value");
  }
  std::sort(z.begin(), z.end());

  // log(1 - Phi(x)) is evaluated as log(Phi(-x)) to keep upper-tail precision.
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(2 * i + 1);
    acc += w * (std::log(phi_raw(z[i])) + std::log(phi_raw(-z[n - 1 - i])));
  }
  const double nd = static_cast<double>(n);
  double a2 = -nd - acc / nd;
  if (!(a2 >= 0.0)) a2 = std::isnan(a2) ? std::numeric_limits<double>::infinity() : 0.0;

  AdResult out;
  out.statistic = a2;
  out.n = n;
  out.p_value = std::isfinite(a2) ? std::clamp(1.0 - anderson_darling_cdf(a2), 0.0, 1.0) : 0.0;
  return out;
}

}  // namespace sns
