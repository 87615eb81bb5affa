#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace sns {

/// Continuous input distributions for simulated streams. Every draw is the
/// quantile function applied to one uniform, so streams generated from the
/// same uniforms are strictly increasing transforms of each other.
enum class Distribution { normal, exponential, uniform, cauchy, lognormal };

Distribution parse_distribution(const std::string& name);
std::string to_string(Distribution d);

/// Quantile function of `d` at u in (0, 1).
double quantile(Distribution d, double u);

/// Deterministic generator for one replication. Seeds are derived from a
/// master seed and the replication number with splitmix64, so results do not
/// depend on how replications are spread over threads.
class UniformStream {
 public:
  UniformStream(std::uint64_t master_seed, std::uint64_t replication);

  /// Uniform in the open interval (0, 1) with 53 random bits.
  double next() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double draw(Distribution d) { return quantile(d, next()); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace sns
