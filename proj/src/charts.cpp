#include "mtbe/charts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtbe {

MewmaChart::MewmaChart(const MewmaConfig& config)
    : config_(config), cov_inverse_(config.covariance.inverse()) {
  if (!(config.lambda > 0.0) || !(config.lambda <= 1.0)) {
    throw std::invalid_argument("MewmaChart: lambda must lie in (0, 1]");
  }
  if (!(config.limit_h > 0.0)) {
    throw std::invalid_argument("MewmaChart: limit must be positive");
  }
  if (!(config.covariance.v11 > 0.0) || !(config.covariance.v22 > 0.0)) {
    throw std::invalid_argument("MewmaChart: covariance diagonal must be positive");
  }
}

Decision MewmaChart::update(const TbePair& y) {
  const double lam = config_.lambda;
  z_[0] = lam * (y.y1 - config_.mean[0]) + (1.0 - lam) * z_[0];
  z_[1] = lam * (y.y2 - config_.mean[1]) + (1.0 - lam) * z_[1];
  const double quad = cov_inverse_.v11 * z_[0] * z_[0] +
                      2.0 * cov_inverse_.v12 * z_[0] * z_[1] +
                      cov_inverse_.v22 * z_[1] * z_[1];
  last_stat_ = (2.0 - lam) / lam * quad;
  ++samples_seen_;
  return Decision{last_stat_ > config_.limit_h, std::nullopt, last_stat_};
}

void MewmaChart::reset() {
  z_ = {0.0, 0.0};
  last_stat_ = 0.0;
  samples_seen_ = 0;
}

PairedEwmaChart::PairedEwmaChart(const PewmaConfig& config) : config_(config) {
  if (!(config.lambda > 0.0) || !(config.lambda <= 1.0)) {
    throw std::invalid_argument("PairedEwmaChart: lambda must lie in (0, 1]");
  }
  for (std::size_t j = 0; j < 2; ++j) {
    if (!(config.theta0[j] > 0.0)) {
      throw std::invalid_argument("PairedEwmaChart: theta0 must be positive");
    }
    if (config.direction == Direction::upper) {
      if (!(config.limits[j] > config.theta0[j])) {
        throw std::invalid_argument("PairedEwmaChart: upper limit must exceed theta0");
      }
    } else {
      if (!(config.limits[j] > 0.0) || !(config.limits[j] < config.theta0[j])) {
        throw std::invalid_argument("PairedEwmaChart: lower limit must lie in (0, theta0)");
      }
    }
  }
  z_ = config_.theta0;
}

bool PairedEwmaChart::step(std::size_t j, double y) {
  const double raw = config_.lambda * y + (1.0 - config_.lambda) * z_[j];
  if (config_.direction == Direction::upper) {
    z_[j] = std::max(config_.theta0[j], raw);
    return z_[j] > config_.limits[j];
  }
  z_[j] = std::min(config_.theta0[j], raw);
  return z_[j] < config_.limits[j];
}

double PairedEwmaChart::excursion(std::size_t j) const {
  // Fraction of the distance from theta0 to the limit covered by z_j.
  const double span = config_.limits[j] - config_.theta0[j];
  return (z_[j] - config_.theta0[j]) / span;
}

Decision PairedEwmaChart::update(const TbePair& y) {
  const bool sig1 = step(0, y.y1);
  const bool sig2 = step(1, y.y2);
  ++samples_seen_;
  Decision d;
  d.signaled = sig1 || sig2;
  if (sig1) {
    d.source = 0;
  } else if (sig2) {
    d.source = 1;
  }
  // Report the crossing statistic, or whichever sits closest to its limit.
  const std::size_t shown = d.source.value_or(excursion(0) >= excursion(1) ? 0 : 1);
  d.statistic = z_[shown];
  return d;
}

Decision PairedEwmaChart::update_stream(std::size_t stream, double y) {
  if (stream >= 2) {
    throw std::out_of_range("PairedEwmaChart: stream index out of range");
  }
  const bool sig = step(stream, y);
  ++samples_seen_;
  Decision d;
  d.signaled = sig;
  if (sig) d.source = stream;
  d.statistic = z_[stream];
  return d;
}

void PairedEwmaChart::reset() {
  z_ = config_.theta0;
  samples_seen_ = 0;
}

ShewhartTbeChart::ShewhartTbeChart(const ShewhartTbeConfig& config) : config_(config) {
  if (config_.streams.empty()) {
    throw std::invalid_argument("ShewhartTbeChart: at least one stream required");
  }
  for (const auto& s : config_.streams) {
    if (!(s.lower >= 0.0) || !(s.upper > s.lower)) {
      throw std::invalid_argument("ShewhartTbeChart: limits must satisfy 0 <= lower < upper");
    }
  }
}

Decision ShewhartTbeChart::update(std::size_t stream, double y) const {
  if (stream >= config_.streams.size()) {
    throw std::out_of_range("ShewhartTbeChart: unknown stream index");
  }
  if (!(y >= 0.0)) {
    throw std::invalid_argument("ShewhartTbeChart: observation must be nonnegative");
  }
  const auto& lim = config_.streams[stream];
  Decision d;
  d.signaled = y > lim.upper || y < lim.lower;
  if (d.signaled) d.source = stream;
  d.statistic = y;
  return d;
}

}  // namespace mtbe
