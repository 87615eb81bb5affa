#include "sns/scorer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sns/normal.hpp"

namespace sns {
namespace {

void require_finite(double x) {
  if (!std::isfinite(x)) throw std::domain_error("scorer: observation must be finite");
}

void require_batch(std::span<const double> batch, std::size_t m) {
  if (batch.size() != m) {
    throw std::invalid_argument("scorer: expected a batch of " + std::to_string(m) +
                                " values, got " + std::to_string(batch.size()));
  }
  for (double x : batch) require_finite(x);
}

double midrank(const RankStore& store, double x) {
  const RankCounts c = store.counts(x);
  return 1.0 + static_cast<double>(c.less) + 0.5 * static_cast<double>(c.equal);
}

/// Midrank of batch[j] among the other batch values accepted by `keep`.
template <typename Keep>
double within_rank(std::span<const double> batch, std::size_t j, Keep keep,
                   std::size_t& comparisons) {
  double rank = 1.0;
  comparisons = 0;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (k == j || !keep(batch[k])) continue;
    ++comparisons;
    if (batch[k] < batch[j]) {
      rank += 1.0;
    } else if (batch[k] == batch[j]) {
      rank += 0.5;
    }
  }
  return rank;
}

}  // namespace

// --- IndividualScorer -------------------------------------------------------

IndividualScorer::IndividualScorer(ScoringConvention convention,
                                   std::optional<std::size_t> window)
    : convention_(convention), store_(window) {}

ScoredValue IndividualScorer::score(double x) {
  require_finite(x);
  ScoredValue out;
  out.index = ++count_;
  out.raw = x;
  out.rank = midrank(store_, x);
  out.p = convention_.probability(out.rank, store_.size());
  out.z = phi_inverse_unchecked(out.p);
  store_.insert(x);
  return out;
}

// --- BatchScorer ------------------------------------------------------------

BatchScorer::BatchScorer(std::size_t m, ScoringConvention convention,
                         std::optional<std::size_t> window)
    : m_(m), convention_(convention), store_(window) {
  if (m_ < 2) throw std::invalid_argument("BatchScorer: batch size must be >= 2");
}

std::vector<ScoredValue> BatchScorer::score(std::span<const double> batch) {
  require_batch(batch, m_);
  ++batches_;
  std::vector<ScoredValue> out(m_);
  for (std::size_t j = 0; j < m_; ++j) {
    ScoredValue& s = out[j];
    s.index = (batches_ - 1) * m_ + j + 1;
    s.batch = batches_;
    s.within = j + 1;
    s.raw = batch[j];
    std::size_t comparisons = 0;
    if (batches_ == 1) {
      s.rank = within_rank(batch, j, [](double) { return true; }, comparisons);
    } else {
      s.rank = midrank(store_, batch[j]);
      comparisons = store_.size();
    }
    s.p = convention_.probability(s.rank, comparisons);
    s.z = phi_inverse_unchecked(s.p);
  }
  for (double x : batch) store_.insert(x);
  return out;
}

// --- ConditionalScorer ------------------------------------------------------

ConditionalScorer::ConditionalScorer(double theta, double f_theta, std::size_t m,
                                     ScoringConvention convention,
                                     std::optional<std::size_t> window)
    : theta_(theta), f_theta_(f_theta), m_(m), convention_(convention), window_(window) {
  if (!std::isfinite(theta_)) throw std::invalid_argument("ConditionalScorer: theta must be finite");
  if (!(f_theta_ > 0.0 && f_theta_ < 1.0)) {
    throw std::invalid_argument("ConditionalScorer: F(theta) must lie in (0, 1)");
  }
  if (m_ == 0) throw std::invalid_argument("ConditionalScorer: batch size must be >= 1");
  if (window_ && *window_ == 0) throw std::invalid_argument("ConditionalScorer: window must be > 0");
}

double ConditionalScorer::splice(bool lower, double rank, std::size_t comparisons) const noexcept {
  const double q = convention_.probability(rank, comparisons);
  return lower ? f_theta_ * q : f_theta_ + (1.0 - f_theta_) * q;
}

void ConditionalScorer::absorb(double x) {
  if (window_) {
    if (arrivals_.size() == *window_) {
      const double old = arrivals_.front();
      arrivals_.pop_front();
      (is_lower(old) ? lower_ : upper_).erase(old);
    }
    arrivals_.push_back(x);
  }
  (is_lower(x) ? lower_ : upper_).insert(x);
}

ScoredValue ConditionalScorer::score(double x) {
  if (batched()) throw std::logic_error("ConditionalScorer: single-value scoring in batched mode");
  require_finite(x);
  const bool lower = is_lower(x);
  const RankStore& side = lower ? lower_ : upper_;
  ScoredValue out;
  out.index = ++count_;
  out.raw = x;
  out.rank = midrank(side, x);
  out.p = splice(lower, out.rank, side.size());
  out.z = phi_inverse_unchecked(out.p);
  absorb(x);
  return out;
}

std::vector<ScoredValue> ConditionalScorer::score(std::span<const double> batch) {
  if (!batched()) {
    require_batch(batch, 1);
    return {score(batch[0])};
  }
  require_batch(batch, m_);
  ++batches_;
  std::vector<ScoredValue> out(m_);
  for (std::size_t j = 0; j < m_; ++j) {
    ScoredValue& s = out[j];
    const double x = batch[j];
    const bool lower = is_lower(x);
    s.index = count_ + j + 1;
    s.batch = batches_;
    s.within = j + 1;
    s.raw = x;
    std::size_t comparisons = 0;
    if (batches_ == 1) {
      s.rank = within_rank(
          batch, j, [&](double v) { return is_lower(v) == lower; }, comparisons);
    } else {
      const RankStore& side = lower ? lower_ : upper_;
      s.rank = midrank(side, x);
      comparisons = side.size();
    }
    s.p = splice(lower, s.rank, comparisons);
    s.z = phi_inverse_unchecked(s.p);
  }
  count_ += m_;
  for (double x : batch) absorb(x);
  return out;
}

}  // namespace sns
