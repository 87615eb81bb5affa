#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace sns {

/// Bias-constant pair (a, b) used to turn a rank into a cumulative-probability
/// estimate, P = (R - 1 + a) / (c + b), where c counts the comparison values.
/// All conventions keep b = 2a so that the scores have mean zero.
class ScoringConvention {
 public:
  enum class Kind { fixed, rankit, adaptive_b, vdw, blom, tukey };

  /// Rankit: a = 0.5, b = 1.
  ScoringConvention() = default;

  static ScoringConvention rankit() { return ScoringConvention(Kind::rankit, 1.0); }
  static ScoringConvention van_der_waerden() { return ScoringConvention(Kind::vdw, 2.0); }
  static ScoringConvention blom() { return ScoringConvention(Kind::blom, 1.25); }
  static ScoringConvention tukey() { return ScoringConvention(Kind::tukey, 4.0 / 3.0); }
  /// b(i) = 0.824 - 0.792 / i for i >= 2; rankit at i = 1.
  static ScoringConvention adaptive() { return ScoringConvention(Kind::adaptive_b, 1.0); }
  /// Any b > 0, with a = b / 2.
  static ScoringConvention fixed(double b);

  /// Accepts rankit, vdw, blom, tukey, adaptive (or adaptive-b) and b=<value>.
  static ScoringConvention parse(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  /// b evaluated at effective sample size i (the scored value plus its
  /// comparison values).
  double b(std::size_t i) const noexcept;
  double a(std::size_t i) const noexcept { return 0.5 * b(i); }

  /// P = (rank - 1 + a) / (comparisons + b), with (a, b) taken at
  /// i = comparisons + 1.
  double probability(double rank, std::size_t comparisons) const noexcept {
    const double bb = b(comparisons + 1);
    return (rank - 1.0 + 0.5 * bb) / (static_cast<double>(comparisons) + bb);
  }

 private:
  ScoringConvention(Kind kind, double b) : kind_(kind), b_(b) {}

  Kind kind_ = Kind::rankit;
  double b_ = 1.0;
};

/// Var(P_i) = (i^2 - 1) / (12 (i - 1 + b)^2) for the uniform sequential rank.
double variance_of_p(std::size_t i, double b);

/// Value of b that makes Var(P_i) equal to 1/12.
double b_for_unit_p_variance(std::size_t i);

}  // namespace sns
