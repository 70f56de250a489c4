#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mtbe/charts.hpp"
#include "mtbe/gumbel.hpp"
#include "mtbe/random.hpp"

namespace mtbe {

/// Multiplicative shift of the scale parameters; (1, 1) is the null shift.
struct ShiftSpec {
  double m1 = 1.0;
  double m2 = 1.0;

  bool is_null() const { return m1 == 1.0 && m2 == 1.0; }
};

inline constexpr std::uint64_t kNeverShifts = std::numeric_limits<std::uint64_t>::max();
inline constexpr double kNeverShiftsTime = std::numeric_limits<double>::infinity();

/// Vector-based monitoring scenario: samples 1..change_sample come from the
/// in-control model, later samples from the shifted model. The dependence
/// parameter is preserved under shifts; only the scales move.
struct VectorScenario {
  GumbelBveParams in_control{1.0, 1.0, 1.0};
  ShiftSpec shift{};
  std::uint64_t change_sample = kNeverShifts;

  GumbelBveParams shifted() const { return in_control.scaled(shift.m1, shift.m2); }
};

/// Independent exponential renewal streams on a shared time axis, in control
/// until change_time and running at shifted rates afterwards.
struct PointProcessScenario {
  std::vector<double> theta0;
  std::vector<double> multiplier;
  double change_time = kNeverShiftsTime;
};

/// One simulated monitoring run. `alarm_time` is the total elapsed time at
/// the signal and `sample_index` the signaling sample (vector runs) or the
/// event index within the signaling stream (point-process runs).
/// `time_from_change` is alarm_time minus the change time; it is NaN when
/// the run never left the in-control state or signaled before the change.
struct RunOutcome {
  bool signaled = false;
  std::uint64_t sample_index = 0;
  double alarm_time = 0.0;
  double time_from_change = std::numeric_limits<double>::quiet_NaN();
  double change_time = std::numeric_limits<double>::quiet_NaN();  // NaN until reached
  bool censored = false;
  std::optional<std::size_t> source;
};

/// Waiting time until a complete vector is observed (the slowest component).
inline double vector_completion_time(const TbePair& y) {
  return y.y1 > y.y2 ? y.y1 : y.y2;
}

/// Feeds freshly drawn vectors to a chart until it signals or the sample cap
/// is reached. The alarm time is the exact sum of completion times up to the
/// signaling sample; the change takes effect after the change_sample-th
/// vector completes. A signal at or before change_sample leaves
/// time_from_change as NaN (burn-in false alarm; the caller decides the
/// discard policy).
template <typename Chart>
RunOutcome run_vector_scenario(const VectorScenario& scenario, const Chart& prototype,
                               std::uint64_t cap, Rng& rng) {
  if (cap < 1) throw std::invalid_argument("run_vector_scenario: cap must be >= 1");
  Chart chart = prototype;
  chart.reset();
  const bool shifts = scenario.change_sample != kNeverShifts && !scenario.shift.is_null();
  const GumbelBveParams post = shifts ? scenario.shifted() : scenario.in_control;

  RunOutcome out;
  double t = 0.0;
  double change_time = 0.0;
  for (std::uint64_t i = 1; i <= cap; ++i) {
    const bool pre_change = i <= scenario.change_sample;
    const TbePair y = sample_pair(pre_change ? scenario.in_control : post, rng);
    t += vector_completion_time(y);
    if (i == scenario.change_sample) {
      change_time = t;
      out.change_time = t;
    }
    const Decision d = chart.update(y);
    if (d.signaled) {
      out.signaled = true;
      out.sample_index = i;
      out.alarm_time = t;
      if (scenario.change_sample != kNeverShifts && i > scenario.change_sample) {
        out.time_from_change = t - change_time;
      }
      out.source = d.source;
      return out;
    }
  }
  out.censored = true;
  out.alarm_time = t;
  out.sample_index = cap;
  return out;
}

/// Simulates each stream's renewal events and reports the earliest signaling
/// event across streams (ties go to the lower stream index). The inter-event
/// interval straddling the change time is handled by memorylessness: the
/// residual after the change is redrawn at the shifted rate, and the tested
/// observation is the full elapsed gap. Runs with no signal before time_cap
/// are censored.
RunOutcome run_point_process_scenario(const PointProcessScenario& scenario,
                                      const ShewhartTbeChart& chart, double time_cap,
                                      Rng& rng);

/// One line of an event log: wall-clock timestamp plus stream index.
struct LogEvent {
  double time = 0.0;
  std::size_t stream = 0;
};

/// Malformed event-log input; `line` is the 1-based offending line number.
struct LogParseError : std::runtime_error {
  LogParseError(const std::string& what, std::size_t line_no)
      : std::runtime_error(what), line(line_no) {}
  std::size_t line;
};

/// Parses the plain-text event-log format: one `timestamp,stream_id` pair
/// per line, decimal-second timestamps, nondecreasing in time; `#` starts a
/// comment line and blank lines are ignored. Stream ids must come from the
/// declared name list.
std::vector<LogEvent> parse_event_log(std::istream& in,
                                      const std::vector<std::string>& stream_names);

enum class Grouping { per_stream, vector_assembly };

/// One alarm raised during a replay.
struct AlarmRecord {
  double time = 0.0;
  std::uint64_t index = 0;  // per-stream event ordinal or vector ordinal
  std::optional<std::size_t> source;
  double statistic = 0.0;
};

using MonitorSpec = std::variant<MewmaConfig, PewmaConfig, ShewhartTbeConfig>;

/// Replays an event log through a chart. Per-stream grouping feeds each
/// stream's successive inter-event times (the first measured from time 0) to
/// a Shewhart or one-sided-EWMA monitor as the events arrive.
/// Vector-assembly grouping fills one slot per stream, feeds the completed
/// vector to a MEWMA or paired-EWMA chart at the time of the last arrival,
/// and starts the next vector from that completion time; events queued from
/// before the current vector window count as zero delay. Chart state is not
/// reset after an alarm, so every signaling update is reported.
std::vector<AlarmRecord> replay_event_log(std::span<const LogEvent> log,
                                          const MonitorSpec& chart, Grouping grouping);

}  // namespace mtbe
