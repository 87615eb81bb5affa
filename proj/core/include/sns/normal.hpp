#pragma once

#include <cstddef>
#include <span>

namespace sns {

/// Standard normal density.
double phi_density(double z) noexcept;

/// Standard normal CDF. Throws std::domain_error for NaN or infinite input.
double phi(double z);

/// Inverse standard normal CDF for p in the open interval (0, 1).
///
/// Rational approximation (relative error about 1e-9) followed by one Halley
/// step against phi(), giving |phi(phi_inverse(p)) - p| <= 1e-12.
/// Throws std::domain_error when p <= 0, p >= 1 or p is NaN.
double phi_inverse(double p);

/// Unchecked variant for hot loops whose callers already guarantee 0 < p < 1.
double phi_inverse_unchecked(double p) noexcept;

struct AdResult {
  double statistic = 0.0;  // A^2
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Anderson-Darling test against the fully specified N(0, 1) (no estimated
/// parameters). The p-value uses the asymptotic distribution of A^2
/// (Marsaglia & Marsaglia, 2004). Requires at least 8 finite values.
AdResult anderson_darling_n01(std::span<const double> sample);

/// Asymptotic CDF of A^2 under the fully specified null.
double anderson_darling_cdf(double a2) noexcept;

}  // namespace sns
