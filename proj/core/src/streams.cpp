#include "sns/streams.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sns/normal.hpp"

namespace sns {

Distribution parse_distribution(const std::string& name) {
  if (name == "normal") return Distribution::normal;
  if (name == "exponential" || name == "exp") return Distribution::exponential;
  if (name == "uniform") return Distribution::uniform;
  if (name == "cauchy") return Distribution::cauchy;
  if (name == "lognormal") return Distribution::lognormal;
  throw std::invalid_argument("unknown distribution: " + name);
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::normal: return "normal";
    case Distribution::exponential: return "exponential";
    case Distribution::uniform: return "uniform";
    case Distribution::cauchy: return "cauchy";
    case Distribution::lognormal: return "lognormal";
  }
  return "unknown";
}

double quantile(Distribution d, double u) {
  switch (d) {
    case Distribution::normal: return phi_inverse_unchecked(u);
    case Distribution::exponential: return -std::log1p(-u);
    case Distribution::uniform: return u;
    case Distribution::cauchy: return std::tan(std::numbers::pi * (u - 0.5));
    case Distribution::lognormal: return std::exp(phi_inverse_unchecked(u));
  }
  throw std::invalid_argument("quantile: unknown distribution");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

UniformStream::UniformStream(std::uint64_t master_seed, std::uint64_t replication)
    : engine_(splitmix64(splitmix64(master_seed) ^ replication)) {}

}  // namespace sns
