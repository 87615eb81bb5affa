#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "sns/convention.hpp"
#include "sns/rank_store.hpp"

namespace sns {

struct ScoredValue {
  std::size_t index = 0;   // 1-based position in the stream
  std::size_t batch = 0;   // 1-based batch number; 0 in individual modes
  std::size_t within = 0;  // 1-based position inside the batch; 0 in individual modes
  double raw = 0.0;
  double rank = 0.0;       // midrank, may be fractional under ties
  double p = 0.5;
  double z = 0.0;
};

/// Sequential normal scores for single observations.
///
/// Each value is ranked against every earlier value (or the last `window`
/// values) plus itself. Ties get the midrank R = 1 + #less + #equal / 2.
class IndividualScorer {
 public:
  explicit IndividualScorer(ScoringConvention convention = {},
                            std::optional<std::size_t> window = std::nullopt);

  ScoredValue score(double x);

  std::size_t count() const noexcept { return count_; }
  const RankStore& store() const noexcept { return store_; }
  const ScoringConvention& convention() const noexcept { return convention_; }

 private:
  ScoringConvention convention_;
  RankStore store_;
  std::size_t count_ = 0;
};

/// Sequential normal scores for batches of m simultaneous observations.
///
/// The first batch is ranked within itself. Every later batch is ranked only
/// against earlier batches, and is absorbed after all of its scores are
/// computed.
class BatchScorer {
 public:
  BatchScorer(std::size_t m, ScoringConvention convention = {},
              std::optional<std::size_t> window = std::nullopt);

  std::vector<ScoredValue> score(std::span<const double> batch);

  std::size_t batch_size() const noexcept { return m_; }
  std::size_t batches() const noexcept { return batches_; }
  const RankStore& store() const noexcept { return store_; }

 private:
  std::size_t m_;
  ScoringConvention convention_;
  RankStore store_;
  std::size_t batches_ = 0;
};

/// Conditional sequential normal scores given a known quantile theta with
/// known F(theta).
///
/// Values <= theta are ranked only among earlier values <= theta and mapped
/// into (0, F(theta)); values > theta among earlier values > theta and mapped
/// into (F(theta), 1). Works on single observations (batch size 1) or on
/// batches, following the same within-first-batch rule as BatchScorer.
class ConditionalScorer {
 public:
  /// m == 1 selects individual mode. Throws std::invalid_argument when
  /// f_theta is outside (0, 1) or theta is not finite.
  ConditionalScorer(double theta, double f_theta, std::size_t m = 1,
                    ScoringConvention convention = {},
                    std::optional<std::size_t> window = std::nullopt);

  ScoredValue score(double x);  // individual mode only
  std::vector<ScoredValue> score(std::span<const double> batch);

  double theta() const noexcept { return theta_; }
  double f_theta() const noexcept { return f_theta_; }
  std::size_t batch_size() const noexcept { return m_; }
  bool batched() const noexcept { return m_ > 1; }

  /// Absorbed observations on each side (N- and N+ after the last update).
  std::size_t n_minus() const noexcept { return lower_.size(); }
  std::size_t n_plus() const noexcept { return upper_.size(); }
  const RankStore& lower_store() const noexcept { return lower_; }
  const RankStore& upper_store() const noexcept { return upper_; }

 private:
  bool is_lower(double x) const noexcept { return x <= theta_; }
  double splice(bool lower, double rank, std::size_t comparisons) const noexcept;
  void absorb(double x);

  double theta_;
  double f_theta_;
  std::size_t m_;
  ScoringConvention convention_;
  std::optional<std::size_t> window_;
  RankStore lower_;
  RankStore upper_;
  std::deque<double> arrivals_;
  std::size_t count_ = 0;
  std::size_t batches_ = 0;
};

}  // namespace sns
