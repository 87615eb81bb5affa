#include "sns/convention.hpp"

#include <cmath>
#include <stdexcept>

namespace sns {

ScoringConvention ScoringConvention::fixed(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("ScoringConvention: b must be a positive finite number");
  }
  return ScoringConvention(Kind::fixed, b);
}

ScoringConvention ScoringConvention::parse(std::string_view name) {
  if (name == "rankit") return rankit();
  if (name == "vdw" || name == "van-der-waerden") return van_der_waerden();
  if (name == "blom") return blom();
  if (name == "tukey") return tukey();
  if (name == "adaptive" || name == "adaptive-b") return adaptive();
  if (name.starts_with("b=")) {
    const std::string text(name.substr(2));
    std::size_t used = 0;
    double b = 0.0;
    try {
      b = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty()) {
      throw std::invalid_argument("unknown convention: " + std::string(name));
    }
    return fixed(b);
  }
  throw std::invalid_argument("unknown convention: " + std::string(name));
}

std::string ScoringConvention::name() const {
  switch (kind_) {
    case Kind::rankit: return "rankit";
    case Kind::vdw: return "vdw";
    case Kind::blom: return "blom";
    case Kind::tukey: return "tukey";
    case Kind::adaptive_b: return "adaptive";
    case Kind::fixed: return "b=" + std::to_string(b_);
  }
  return "unknown";
}

double ScoringConvention::b(std::size_t i) const noexcept {
  if (kind_ == Kind::adaptive_b) {
    if (i < 2) return 1.0;
    return 0.824 - 0.792 / static_cast<double>(i);
  }
  return b_;
}

double variance_of_p(std::size_t i, double b) {
  if (i < 2) throw std::invalid_argument("variance_of_p: i must be >= 2");
  if (!(b > 0.0)) throw std::invalid_argument("variance_of_p: b must be > 0");
  const double n = static_cast<double>(i);
  const double d = n - 1.0 + b;
  return (n * n - 1.0) / (12.0 * d * d);
}

double b_for_unit_p_variance(std::size_t i) {
  if (i < 2) throw std::invalid_argument("b_for_unit_p_variance: i must be >= 2");
  const double n = static_cast<double>(i);
  return 1.0 - n + std::sqrt(n * n - 1.0);
}

}  // namespace sns
