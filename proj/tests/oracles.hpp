#pragma once

// Test-only reference implementations. None of these share code paths with
// the library: they use long double series and continued fractions,
// brute-force counting and plain sorted vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// erf by its Maclaurin series in long double (accurate for |x| <= 4).
inline long double erf_series(long double x) {
  long double term = x;
  long double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x * x / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-30L) break;
  }
  return sum * 2.0L / std::sqrt(3.141592653589793238462643383279502884L);
}

/// erfc by its continued fraction, evaluated bottom-up (accurate for x >= 2).
inline long double erfc_continued_fraction(long double x) {
  long double t = x;
  for (int n = 400; n >= 1; --n) t = x + (n / 2.0L) / t;
  return std::exp(-x * x) / std::sqrt(3.141592653589793238462643383279502884L) / t;
}

/// The series loses relative accuracy in the tails, so |z| > 3 uses the
/// continued fraction on the small side.
inline long double phi(long double z) {
  if (z < -3.0L) return 0.5L * erfc_continued_fraction(-z / std::sqrt(2.0L));
  if (z > 3.0L) return 1.0L - 0.5L * erfc_continued_fraction(z / std::sqrt(2.0L));
  return 0.5L * (1.0L + erf_series(z / std::sqrt(2.0L)));
}

/// Root of phi(z) = p by bisection on [-9, 9].
inline long double phi_inverse(long double p) {
  long double lo = -9.0L;
  long double hi = 9.0L;
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (phi(mid) < p ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

/// Multiset as a sorted vector with FIFO window.
class SortedList {
 public:
  explicit SortedList(std::size_t window = 0) : window_(window) {}

  void insert(double x) {
    if (window_ != 0 && arrivals_.size() == window_) {
      const double old = arrivals_.front();
      arrivals_.erase(arrivals_.begin());
      values_.erase(std::find(values_.begin(), values_.end(), old));
    }
    arrivals_.push_back(x);
    values_.insert(std::upper_bound(values_.begin(), values_.end(), x), x);
  }
  std::size_t count_lt(double x) const {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [&](double v) { return v < x; }));
  }
  std::size_t count_le(double x) const {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [&](double v) { return v <= x; }));
  }
  std::size_t size() const { return values_.size(); }

 private:
  std::size_t window_;
  std::vector<double> values_;
  std::vector<double> arrivals_;
};

/// Midrank of x among `prior` plus x itself: 1 + #less + #equal / 2.
inline double brute_midrank(const std::vector<double>& prior, double x) {
  double r = 1.0;
  for (double v : prior) {
    if (v < x) r += 1.0;
    if (v == x) r += 0.5;
  }
  return r;
}

}  // namespace oracle
