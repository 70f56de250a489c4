#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mtbe/gumbel.hpp"

namespace mtbe {

enum class Direction { upper, lower };

/// Outcome of feeding one observation to a chart. `statistic` is the value
/// of the plotted monitoring statistic at this update; `source` identifies
/// the crossing stream for univariate charts and is empty otherwise.
struct Decision {
  bool signaled = false;
  std::optional<std::size_t> source;
  double statistic = 0.0;
};

/// Configuration of the multivariate EWMA chart: smoothing constant,
/// in-control mean vector and covariance matrix, and the control limit on
/// the quadratic-form statistic.
struct MewmaConfig {
  double lambda = 0.1;
  std::array<double, 2> mean{};
  Sym2 covariance{};
  double limit_h = 1.0;
};

/// Multivariate EWMA chart. The EWMA vector starts at zero; each update
/// smooths the centered observation and plots
///   E^2 = (2 - lambda) / lambda * z' Sigma^{-1} z,
/// signaling when E^2 exceeds the limit. The covariance inverse is computed
/// once at construction.
class MewmaChart {
 public:
  explicit MewmaChart(const MewmaConfig& config);

  Decision update(const TbePair& y);
  void reset();

  const std::array<double, 2>& z() const { return z_; }
  double last_statistic() const { return last_stat_; }
  std::uint64_t samples_seen() const { return samples_seen_; }
  const MewmaConfig& config() const { return config_; }

 private:
  MewmaConfig config_;
  Sym2 cov_inverse_;
  std::array<double, 2> z_{};
  double last_stat_ = 0.0;
  std::uint64_t samples_seen_ = 0;
};

/// Configuration of the paired one-sided univariate EWMA charts. The limits
/// are (U1, U2) for the upper pair and (L1, L2) for the lower pair.
struct PewmaConfig {
  double lambda = 0.1;
  std::array<double, 2> theta0{};
  Direction direction = Direction::lower;
  std::array<double, 2> limits{};
};

/// Pair of one-sided EWMA charts run as a single monitor: both statistics
/// update on every observation and the pair signals as soon as either one
/// crosses its own limit. Upper charts clamp the statistic at theta0 from
/// below (z_j = max(theta0_j, lambda y_j + (1 - lambda) z_j)), lower charts
/// clamp from above; both start at z = theta0.
class PairedEwmaChart {
 public:
  explicit PairedEwmaChart(const PewmaConfig& config);

  Decision update(const TbePair& y);
  /// Updates only one stream's statistic (point-process replay, where the
  /// streams deliver observations at their own pace).
  Decision update_stream(std::size_t stream, double y);
  void reset();

  const std::array<double, 2>& z() const { return z_; }
  std::uint64_t samples_seen() const { return samples_seen_; }
  const PewmaConfig& config() const { return config_; }

 private:
  bool step(std::size_t j, double y);  // returns whether stream j signals
  double excursion(std::size_t j) const;

  PewmaConfig config_;
  std::array<double, 2> z_{};
  std::uint64_t samples_seen_ = 0;
};

/// Per-stream Shewhart limits on individual times between events. A stream
/// signals when an observed TBE falls outside (lower, upper).
struct ShewhartStreamLimits {
  double lower = 0.0;
  double upper = 0.0;
};

struct ShewhartTbeConfig {
  std::vector<ShewhartStreamLimits> streams;
};

/// Stateless Shewhart chart over several TBE streams.
class ShewhartTbeChart {
 public:
  explicit ShewhartTbeChart(const ShewhartTbeConfig& config);

  Decision update(std::size_t stream, double y) const;
  std::size_t stream_count() const { return config_.streams.size(); }
  const ShewhartTbeConfig& config() const { return config_; }

 private:
  ShewhartTbeConfig config_;
};

}  // namespace mtbe
