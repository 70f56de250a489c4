#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mtbe/charts.hpp"
#include "mtbe/gumbel.hpp"
#include "mtbe/scenarios.hpp"

namespace mtbe {

/// Monte Carlo estimate of an average time to signal. `mean_ats` averages
/// the accounting target of the chosen mode (total alarm time, or time from
/// the change point); `std_error` is sample-sd / sqrt(n_runs) and NaN when
/// n_runs < 2. `mean_samples` is the matching average signal count (run
/// length), kept as a diagnostic only.
struct AtsEstimate {
  double mean_ats = 0.0;
  double std_error = 0.0;
  std::uint64_t n_runs = 0;
  std::uint64_t n_discarded = 0;
  std::uint64_t n_censored = 0;
  double mean_samples = 0.0;

  /// An estimate is unusable once more than 0.1% of runs hit the length cap.
  bool valid() const {
    return n_runs > 0 && 1000 * n_censored <= n_runs;
  }
};

enum class AtsMode { zero_state, steady_state };

/// Steady-state protocol: the shift takes effect after `burn_in_samples`
/// complete vectors; a run signaling during the burn-in is discarded and
/// regenerated with a fresh seed, up to `max_attempts` tries per slot.
struct SteadyStateConfig {
  std::uint64_t burn_in_samples = 50;
  std::uint64_t max_attempts = 1000;
};

struct SimOptions {
  std::uint64_t n_runs = 100000;
  std::uint64_t seed = 1;
  std::uint64_t cap_samples = 1000000;
  unsigned workers = 0;  // 0 = hardware concurrency
  AtsMode mode = AtsMode::steady_state;
  SteadyStateConfig steady{};
};

struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a steady-state slot exhausts its regeneration budget without
/// ever surviving the burn-in (limits so tight the chart always false-alarms).
struct StarvationError : SimulationError {
  StarvationError(const std::string& what, std::uint64_t starved)
      : SimulationError(what), n_starved(starved) {}
  std::uint64_t n_starved;
};

using VectorChartSpec = std::variant<MewmaConfig, PewmaConfig>;

/// Monte Carlo ATS for the vector scenario. Each slot r derives its seed
/// from (seed, r, attempt) — see derive_seed — so the estimate is identical
/// for any worker count. Zero-state mode averages total alarm time t_A
/// (also the right mode for in-control estimation with change_sample
/// = kNeverShifts); steady-state mode requires a finite change_sample equal
/// to the burn-in, discards burn-in false alarms, and averages the time
/// from the change.
AtsEstimate estimate_ats(const VectorScenario& scenario, const VectorChartSpec& chart,
                         const SimOptions& options);

struct PointSimOptions {
  std::uint64_t n_runs = 100000;
  std::uint64_t seed = 1;
  double time_cap = 1000000.0;
  unsigned workers = 0;
  AtsMode mode = AtsMode::zero_state;
  std::uint64_t max_attempts = 1000;  // steady-state regeneration budget
};

/// Point-process counterpart: zero-state averages t_A; steady-state (finite
/// change_time) discards alarms at or before the change and averages
/// t_A - change_time.
AtsEstimate estimate_ats(const PointProcessScenario& scenario,
                         const ShewhartTbeConfig& chart, const PointSimOptions& options);

/// Analytic in-control ATS of one exponential stream under Shewhart limits:
/// theta0 / p with per-event signal probability
/// p = exp(-upper/theta0) + 1 - exp(-lower/theta0) (Wald's identity).
double shewhart_single_stream_ats0(double theta0, const ShewhartStreamLimits& limits);

/// How calibration measures the in-control ATS it drives to the target:
/// the steady-state protocol (burn-in, discards, time from the change) or
/// the plain total alarm time of a never-shifting run.
enum class CalibrationProtocol { steady_state, total_time };

struct CalibrationSettings {
  double target_ats0 = 200.0;
  double rel_tol = 0.01;
  std::uint64_t reps_per_eval = 20000;
  std::uint64_t n_reps_final = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::uint64_t cap_samples = 1000000;
  CalibrationProtocol protocol = CalibrationProtocol::steady_state;
  SteadyStateConfig steady{};
  unsigned max_bracket_steps = 60;
  unsigned max_bisect_steps = 80;
};

struct CalibrationError : SimulationError {
  CalibrationError(const std::string& what, double lo, double hi)
      : SimulationError(what), ats_lo(lo), ats_hi(hi) {}
  double ats_lo;  // ATS range seen while trying to bracket
  double ats_hi;
};

/// Output of calibrate(): the prototype chart with final limits installed,
/// the scalar that was searched (h for the multivariate chart, the
/// proportional scale c for the paired charts), and the full-size validation
/// estimate of the achieved in-control ATS.
struct CalibrationResult {
  VectorChartSpec chart;
  double scalar = 0.0;
  AtsEstimate achieved;
  std::uint64_t evaluations = 0;
  std::uint64_t bisect_iterations = 0;
  std::uint64_t reps_per_eval = 0;
};

/// Finds chart limits whose in-control ATS hits the target, by monotone
/// stochastic bisection on one scalar: h for the multivariate chart, or the
/// proportional scale c with limits c * theta0_j for the paired charts
/// (upper pairs search c > 1, lower pairs 0 < c < 1). The limit fields of
/// `prototype` are ignored. Every search evaluation reuses the same seeds
/// (common random numbers) at reps_per_eval runs; the final limit is then
/// re-validated on fresh seeds at n_reps_final runs.
CalibrationResult calibrate(const GumbelBveParams& in_control,
                            const VectorChartSpec& prototype,
                            const CalibrationSettings& settings);

enum class Method { mewma, pewma };

/// One table cell: a (model, shift, direction, method) steady-state estimate.
struct Table1Cell {
  std::size_t model = 0;  // 1-based model number
  ShiftSpec shift{};
  Direction direction = Direction::lower;
  Method method = Method::mewma;
  double lambda = 0.0;
  std::string limit_spec;
  AtsEstimate estimate;
};

struct Table1Spec {
  std::vector<GumbelBveParams> models;
  double lambda = 0.1;
  std::vector<ShiftSpec> low_shifts;
  std::vector<ShiftSpec> up_shifts;
  CalibrationSettings calibration{};
  SimOptions sim{};
  std::function<void(const std::string&)> progress;  // optional stage log

  /// The four in-control models of the study and its six scale shifts.
  static Table1Spec study_defaults();
};

struct Table1Result {
  double lambda = 0.0;
  std::vector<GumbelBveParams> models;
  std::vector<CalibrationResult> mewma_limits;        // one per model
  std::vector<CalibrationResult> pewma_lower_limits;  // one per model
  std::vector<CalibrationResult> pewma_upper_limits;  // one per model
  std::vector<Table1Cell> cells;  // includes the null-shift rows
};

/// Calibrates every chart and fills the models x shifts x methods grid of
/// steady-state ATS estimates, including a null-shift row per direction.
Table1Result run_table1(const Table1Spec& spec);

/// CSV emitters. The grid schema is
///   model,shift1,shift2,direction,method,lambda,limit_spec,ats,stderr,
///   n_runs,n_discarded,n_censored
/// and the scatter schema is model,shift_label,mewma_ats,pewma_ats with one
/// row per out-of-control cell pair. Formatting is locale-independent, so
/// identical results serialize to identical bytes.
void write_table1_csv(const Table1Result& result, std::ostream& out);
void write_scatter_csv(const Table1Result& result, std::ostream& out);

/// Aligned human-readable rendering of the grid; the lower ATS of each
/// method pair is marked with '*' and a summary line counts the cells where
/// the paired charts beat the multivariate chart.
void write_table1_human(const Table1Result& result, std::ostream& out);

/// Renders one estimate as a short human-readable line fragment.
std::string format_estimate(const AtsEstimate& e);

}  // namespace mtbe
