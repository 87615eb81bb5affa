#include "sns/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "sns/normal.hpp"
#include "sns/scorer.hpp"

namespace sns {

ChartType parse_chart_type(const std::string& name) {
  if (name == "cusum-mean") return ChartType::cusum_mean;
  if (name == "cusum-var") return ChartType::cusum_variance;
  if (name == "ewma") return ChartType::ewma;
  throw std::invalid_argument("unknown chart: " + name);
}

std::string to_string(ChartType t) {
  switch (t) {
    case ChartType::cusum_mean: return "cusum-mean";
    case ChartType::cusum_variance: return "cusum-var";
    case ChartType::ewma: return "ewma";
  }
  return "unknown";
}

ScorerVariant parse_variant(const std::string& name) {
  if (name == "individual") return ScorerVariant::individual;
  if (name == "batched") return ScorerVariant::batched;
  if (name == "conditional-individual") return ScorerVariant::conditional_individual;
  if (name == "conditional-batched") return ScorerVariant::conditional_batched;
  throw std::invalid_argument("unknown variant: " + name);
}

std::string to_string(ScorerVariant v) {
  switch (v) {
    case ScorerVariant::individual: return "individual";
    case ScorerVariant::batched: return "batched";
    case ScorerVariant::conditional_individual: return "conditional-individual";
    case ScorerVariant::conditional_batched: return "conditional-batched";
  }
  return "unknown";
}

Chart ChartConfig::make_chart() const {
  switch (type) {
    case ChartType::cusum_mean: return Chart(CusumMean(k, h, side));
    case ChartType::cusum_variance: return Chart(CusumVariance(k, h), m);
    case ChartType::ewma: return Chart(Ewma(lambda, rho, m));
  }
  throw std::invalid_argument("ChartConfig: unknown chart type");
}

double ChartConfig::free_limit() const noexcept {
  switch (type) {
    case ChartType::cusum_mean: return h;
    case ChartType::cusum_variance: return -h;
    case ChartType::ewma: return rho;
  }
  return 0.0;
}

void ChartConfig::set_free_limit(double magnitude) {
  switch (type) {
    case ChartType::cusum_mean: h = magnitude; break;
    case ChartType::cusum_variance: h = -magnitude; break;
    case ChartType::ewma: rho = magnitude; break;
  }
}

namespace {

/// Produces chart inputs one score at a time for a single replication.
class ScoreSource {
 public:
  ScoreSource(const StreamModel& model, std::uint64_t seed, std::size_t replication)
      : model_(model), uniforms_(seed, replication) {
    if (model_.kind == StreamModel::Kind::exact_normal) return;
    const std::size_t m = is_batched(model_.variant) ? model_.batch_size : 1;
    switch (model_.variant) {
      case ScorerVariant::individual:
        scorer_.emplace<IndividualScorer>(model_.convention, model_.window);
        break;
      case ScorerVariant::batched:
        scorer_.emplace<BatchScorer>(m, model_.convention, model_.window);
        break;
      case ScorerVariant::conditional_individual:
      case ScorerVariant::conditional_batched:
        scorer_.emplace<ConditionalScorer>(quantile(model_.distribution, model_.f_theta),
                                           model_.f_theta, m, model_.convention, model_.window);
        break;
    }
    raw_.resize(m);
  }

  double next() {
    if (model_.kind == StreamModel::Kind::exact_normal) {
      return transform(phi_inverse_unchecked(uniforms_.next()));
    }
    if (pos_ == buffer_.size()) refill();
    return buffer_[pos_++];
  }

 private:
  double transform(double x) {
    ++observed_;
    if (model_.change_point != 0 && observed_ > model_.change_point) {
      return model_.shift + model_.scale * x;
    }
    return x;
  }

  void refill() {
    for (double& x : raw_) x = transform(uniforms_.draw(model_.distribution));
    buffer_.clear();
    pos_ = 0;
    std::visit(
        [&](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, IndividualScorer>) {
            buffer_.push_back(s.score(raw_[0]).z);
          } else if constexpr (!std::is_same_v<T, std::monostate>) {
            for (const ScoredValue& v : s.score(raw_)) buffer_.push_back(v.z);
          }
        },
        scorer_);
  }

  const StreamModel& model_;
  UniformStream uniforms_;
  std::variant<std::monostate, IndividualScorer, BatchScorer, ConditionalScorer> scorer_;
  std::vector<double> raw_;
  std::vector<double> buffer_;
  std::size_t pos_ = 0;
  std::size_t observed_ = 0;
};

std::size_t one_run(const ChartConfig& config, const StreamModel& model, std::uint64_t seed,
                    std::size_t replication, std::size_t cap, bool& censored) {
  Chart chart = config.make_chart();
  ScoreSource source(model, seed, replication);
  std::vector<double> scores(chart.scores_per_step());
  for (std::size_t t = 1; t <= cap; ++t) {
    for (double& z : scores) z = source.next();
    if (chart.step(scores).signal) {
      censored = false;
      return t;
    }
  }
  censored = true;
  return cap;
}

void validate_model(const ChartConfig& chart, const StreamModel& model) {
  if (model.kind != StreamModel::Kind::sns) return;
  if (is_batched(model.variant) && model.batch_size < 2) {
    throw std::invalid_argument("StreamModel: batched variants need batch_size >= 2");
  }
  if (is_conditional(model.variant) && !(model.f_theta > 0.0 && model.f_theta < 1.0)) {
    throw std::invalid_argument("StreamModel: f_theta must lie in (0, 1)");
  }
  (void)chart;
}

}  // namespace

RunLengths simulate_run_lengths(const ChartConfig& chart, const StreamModel& model,
                                std::size_t replications, std::size_t cap, std::uint64_t seed,
                                unsigned threads) {
  if (cap == 0) throw std::invalid_argument("simulate_run_lengths: cap must be >= 1");
  validate_model(chart, model);
  (void)chart.make_chart();  // surface configuration errors on the calling thread

  RunLengths out;
  out.cap = cap;
  out.lengths.assign(replications, 0);
  std::vector<unsigned char> censored(replications, 0);

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, replications)));

  auto work = [&](unsigned w) {
    for (std::size_t r = w; r < replications; r += workers) {
      bool c = false;
      out.lengths[r] = one_run(chart, model, seed, r, cap, c);
      censored[r] = c ? 1 : 0;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (unsigned char c : censored) out.censored += c;
  return out;
}

ArlEstimate summarize(const RunLengths& runs) {
  ArlEstimate e;
  e.replications = runs.lengths.size();
  e.truncation_cap = runs.cap;
  if (e.replications == 0) return e;
  double sum = 0.0;
  for (std::size_t v : runs.lengths) sum += static_cast<double>(v);
  const double n = static_cast<double>(e.replications);
  e.mean_rl = sum / n;
  double ss = 0.0;
  for (std::size_t v : runs.lengths) {
    const double d = static_cast<double>(v) - e.mean_rl;
    ss += d * d;
  }
  e.std_error = e.replications > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  e.censored_fraction = static_cast<double>(runs.censored) / n;
  return e;
}

ArlEstimate estimate_arl(const ChartConfig& chart, const StreamModel& model,
                         std::size_t replications, std::size_t cap, std::uint64_t seed,
                         unsigned threads) {
  if (replications < 100) throw std::invalid_argument("estimate_arl: need at least 100 replications");
  return summarize(simulate_run_lengths(chart, model, replications, cap, seed, threads));
}

CalibrationResult calibrate_limit(const CalibrationTarget& target, std::uint64_t seed,
                                  unsigned threads) {
  if (!(target.target_arl0 > 1.0)) throw std::invalid_argument("calibrate_limit: target ARL0 must be > 1");
  if (!(target.tolerance > 0.0)) throw std::invalid_argument("calibrate_limit: tolerance must be > 0");
  const std::size_t cap = target.cap.value_or(
      static_cast<std::size_t>(std::ceil(50.0 * target.target_arl0)));

  ChartConfig config = target.chart;
  CalibrationResult result;
  auto evaluate = [&](double s) {
    config.set_free_limit(s);
    ++result.evaluations;
    return estimate_arl(config, target.model, target.replications, cap, seed, threads);
  };
  auto rel_error = [&](const ArlEstimate& e) {
    return std::abs(e.mean_rl - target.target_arl0) / target.target_arl0;
  };
  auto finish = [&](double s, const ArlEstimate& e) {
    config.set_free_limit(s);
    result.limit = config.type == ChartType::ewma ? config.rho : config.h;
    result.estimate = e;
    return result;
  };

  double lo = 0.0;
  double hi = 0.0;
  ArlEstimate arl_lo;
  ArlEstimate arl_hi;
  if (target.bracket) {
    lo = target.bracket->first;
    hi = target.bracket->second;
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("calibrate_limit: bracket must satisfy 0 < lo < hi");
    arl_lo = evaluate(lo);
    arl_hi = evaluate(hi);
    if (arl_lo.mean_rl > target.target_arl0 || arl_hi.mean_rl < target.target_arl0) {
      std::ostringstream msg;
      msg << "calibrate_limit: bracket [" << lo << ", " << hi << "] does not contain ARL0 "
          << target.target_arl0 << " (ARL at ends: " << arl_lo.mean_rl << ", " << arl_hi.mean_rl
          << ")";
      throw std::runtime_error(msg.str());
    }
  } else {
    double s = config.free_limit();
    if (!(s > 0.0)) s = 1.0;
    ArlEstimate e = evaluate(s);
    if (rel_error(e) <= target.tolerance) return finish(s, e);
    constexpr double kGrow = 1.5;
    constexpr int kMaxExpansions = 30;
    int expansions = 0;
    if (e.mean_rl < target.target_arl0) {
      lo = s;
      arl_lo = e;
      hi = s * kGrow;
      arl_hi = evaluate(hi);
      while (arl_hi.mean_rl < target.target_arl0) {
        if (++expansions > kMaxExpansions) throw std::runtime_error("calibrate_limit: could not bracket target from below");
        lo = hi;
        arl_lo = arl_hi;
        hi *= kGrow;
        arl_hi = evaluate(hi);
      }
    } else {
      hi = s;
      arl_hi = e;
      lo = s / kGrow;
      arl_lo = evaluate(lo);
      while (arl_lo.mean_rl > target.target_arl0) {
        if (++expansions > kMaxExpansions) throw std::runtime_error("calibrate_limit: could not bracket target from above");
        hi = lo;
        arl_hi = arl_lo;
        lo /= kGrow;
        arl_lo = evaluate(lo);
      }
    }
  }
  if (rel_error(arl_lo) <= target.tolerance) return finish(lo, arl_lo);
  if (rel_error(arl_hi) <= target.tolerance) return finish(hi, arl_hi);

  // Illinois regula falsi on log(ARL) - log(target); common random numbers
  // make ARL a monotone step function of the limit.
  const double log_target = std::log(target.target_arl0);
  double f_lo = std::log(std::max(arl_lo.mean_rl, 1.0)) - log_target;
  double f_hi = std::log(std::max(arl_hi.mean_rl, 1.0)) - log_target;
  int side = 0;
  double best_s = lo;
  ArlEstimate best = arl_lo;
  for (int iter = 0; iter < 60; ++iter) {
    double s = (f_hi != f_lo) ? hi - f_hi * (hi - lo) / (f_hi - f_lo) : 0.5 * (lo + hi);
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
    const ArlEstimate e = evaluate(s);
    if (rel_error(e) < rel_error(best)) {
      best = e;
      best_s = s;
    }
    if (rel_error(e) <= target.tolerance) return finish(s, e);
    const double f = std::log(std::max(e.mean_rl, 1.0)) - log_target;
    if (f < 0.0) {
      lo = s;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = s;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
    if (hi - lo <= 1e-9 * hi) break;
  }
  return finish(best_s, best);
}

ArlComparison compare_sns_vs_normal(const ChartConfig& chart, const StreamModel& sns_model,
                                    std::size_t replications, std::size_t cap,
                                    std::uint64_t seed, unsigned threads) {
  StreamModel normal = StreamModel::exact_normal();
  normal.change_point = sns_model.change_point;
  normal.shift = sns_model.shift;
  normal.scale = sns_model.scale;
  StreamModel transformed = sns_model;
  transformed.kind = StreamModel::Kind::sns;

  ArlComparison out;
  out.normal = estimate_arl(chart, normal, replications, cap, seed, threads);
  out.sns = estimate_arl(chart, transformed, replications, cap, seed, threads);
  out.ratio = out.normal.mean_rl > 0.0 ? out.sns.mean_rl / out.normal.mean_rl : 0.0;
  return out;
}

}  // namespace sns
