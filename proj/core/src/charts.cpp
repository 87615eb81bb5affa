#include "sns/charts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sns {

void ChartVerdict::record(const ChartPoint& point) {
  path.push_back(point);
  if (point.signal && !signal_step) signal_step = point.step;
}

CusumSide parse_cusum_side(const std::string& name) {
  if (name == "upper") return CusumSide::upper;
  if (name == "lower") return CusumSide::lower;
  if (name == "both") return CusumSide::both;
  throw std::invalid_argument("unknown CUSUM side: " + name);
}

// --- CusumMean --------------------------------------------------------------

CusumMean::CusumMean(double k, double h, CusumSide side) : k_(k), h_(h), side_(side) {
  if (!(k_ >= 0.0)) throw std::invalid_argument("CusumMean: k must be >= 0");
  set_h(h);
}

void CusumMean::set_h(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("CusumMean: h must be > 0");
  h_ = h;
}

ChartPoint CusumMean::step(double z) {
  ++t_;
  c_plus_ = std::max(0.0, c_plus_ + z - k_);
  c_minus_ = std::min(0.0, c_minus_ + z + k_);
  if (c_plus_ == 0.0) last_zero_plus_ = t_;
  if (c_minus_ == 0.0) last_zero_minus_ = t_;

  ChartPoint p;
  p.step = t_;
  switch (side_) {
    case CusumSide::upper:
      p.value = c_plus_;
      p.limit = h_;
      p.signal = c_plus_ > h_;
      break;
    case CusumSide::lower:
      p.value = c_minus_;
      p.limit = -h_;
      p.signal = c_minus_ < -h_;
      break;
    case CusumSide::both:
      if (c_plus_ >= -c_minus_) {
        p.value = c_plus_;
        p.limit = h_;
      } else {
        p.value = c_minus_;
        p.limit = -h_;
      }
      p.signal = c_plus_ > h_ || c_minus_ < -h_;
      break;
  }
  return p;
}

// --- CusumVariance ----------------------------------------------------------

CusumVariance::CusumVariance(double k, double h) : k_(k), h_(h) {
  if (!std::isfinite(k_)) throw std::invalid_argument("CusumVariance: k must be finite");
  set_h(h);
}

void CusumVariance::set_h(double h) {
  if (!(h < 0.0)) throw std::invalid_argument("CusumVariance: h must be < 0");
  h_ = h;
}

ChartPoint CusumVariance::step(std::span<const double> scores) {
  const std::size_t m = scores.size();
  if (m < 2) throw std::invalid_argument("CusumVariance: batch size must be >= 2");
  double mean = 0.0;
  for (double z : scores) mean += z;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double z : scores) ss += (z - mean) * (z - mean);
  const double s2 = ss / static_cast<double>(m - 1);

  ++t_;
  c_minus_ = std::min(0.0, c_minus_ + s2 - k_);
  if (c_minus_ == 0.0) last_zero_ = t_;
  return ChartPoint{t_, c_minus_, h_, c_minus_ < h_};
}

double cusum_variance_k(double sigma0, double sigma1) {
  if (!(sigma0 > 0.0) || !(sigma1 > 0.0)) {
    throw std::invalid_argument("cusum_variance_k: sigmas must be > 0");
  }
  if (sigma0 == sigma1) throw std::invalid_argument("cusum_variance_k: sigmas must differ");
  const double s0 = sigma0 * sigma0;
  const double s1 = sigma1 * sigma1;
  return std::abs(2.0 * std::log(sigma0 / sigma1) * s0 * s1 / (s1 - s0));
}

// --- Ewma -------------------------------------------------------------------

Ewma::Ewma(double lambda, double rho, std::size_t m) : lambda_(lambda), rho_(rho), m_(m) {
  if (!(lambda_ > 0.0 && lambda_ <= 1.0)) throw std::invalid_argument("Ewma: lambda must be in (0, 1]");
  if (m_ == 0) throw std::invalid_argument("Ewma: batch size must be >= 1");
  set_rho(rho);
}

void Ewma::set_rho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("Ewma: rho must be >= 0");
  rho_ = rho;
}

double Ewma::limit(std::size_t i) const noexcept {
  const double decay = std::pow(1.0 - lambda_, 2.0 * static_cast<double>(i));
  return rho_ * std::sqrt(lambda_ / (2.0 - lambda_) * (1.0 - decay)) /
         std::sqrt(static_cast<double>(m_));
}

double Ewma::asymptotic_limit() const noexcept {
  return rho_ * std::sqrt(lambda_ / (2.0 - lambda_)) / std::sqrt(static_cast<double>(m_));
}

ChartPoint Ewma::step(std::span<const double> scores) {
  if (scores.size() != m_) throw std::invalid_argument("Ewma: wrong batch size");
  double mean = 0.0;
  for (double z : scores) mean += z;
  mean /= static_cast<double>(m_);

  ++t_;
  u_ = lambda_ * mean + (1.0 - lambda_) * u_;
  const double one_minus = 1.0 - lambda_;
  decay2_ *= one_minus * one_minus;
  const double lim = rho_ * std::sqrt(lambda_ / (2.0 - lambda_) * (1.0 - decay2_)) /
                     std::sqrt(static_cast<double>(m_));
  return ChartPoint{t_, u_, lim, std::abs(u_) > lim};
}

// --- Chart ------------------------------------------------------------------

Chart::Chart(Engine engine, std::size_t scores_per_step)
    : engine_(std::move(engine)), per_step_(scores_per_step) {
  if (std::holds_alternative<CusumMean>(engine_) && per_step_ != 1) {
    throw std::invalid_argument("Chart: CUSUM mean consumes one score per step");
  }
  if (std::holds_alternative<CusumVariance>(engine_) && per_step_ < 2) {
    throw std::invalid_argument("Chart: variance CUSUM needs batches of at least 2 scores");
  }
  if (const auto* e = std::get_if<Ewma>(&engine_); e && e->batch_size() != per_step_) {
    throw std::invalid_argument("Chart: EWMA batch size mismatch");
  }
}

ChartPoint Chart::step(std::span<const double> scores) {
  if (scores.size() != per_step_) throw std::invalid_argument("Chart: wrong number of scores");
  return std::visit(
      [&](auto& e) -> ChartPoint {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CusumMean>) {
          return e.step(scores[0]);
        } else {
          return e.step(scores);
        }
      },
      engine_);
}

}  // namespace sns
