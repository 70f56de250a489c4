#include "mtbe/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace mtbe {

namespace {

void validate_point_process(const PointProcessScenario& s) {
  if (s.theta0.empty()) {
    throw std::invalid_argument("point process scenario: no streams");
  }
  if (s.multiplier.size() != s.theta0.size()) {
    throw std::invalid_argument("point process scenario: multiplier count mismatch");
  }
  for (double t : s.theta0) {
    if (!(t > 0.0)) throw std::invalid_argument("point process scenario: theta0 must be positive");
  }
  for (double m : s.multiplier) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("point process scenario: multipliers must be positive");
    }
  }
  if (std::isnan(s.change_time) || s.change_time < 0.0) {
    throw std::invalid_argument("point process scenario: change_time must be >= 0");
  }
}

}  // namespace

RunOutcome run_point_process_scenario(const PointProcessScenario& scenario,
                                      const ShewhartTbeChart& chart, double time_cap,
                                      Rng& rng) {
  validate_point_process(scenario);
  if (chart.stream_count() != scenario.theta0.size()) {
    throw std::invalid_argument("point process scenario: chart stream count mismatch");
  }
  if (!(time_cap > 0.0)) {
    throw std::invalid_argument("point process scenario: time_cap must be positive");
  }

  const double change = scenario.change_time;
  RunOutcome out;
  if (change < std::numeric_limits<double>::infinity()) out.change_time = change;
  double best_alarm = std::numeric_limits<double>::infinity();

  for (std::size_t j = 0; j < scenario.theta0.size(); ++j) {
    const double pre_mean = scenario.theta0[j];
    const double post_mean = pre_mean * scenario.multiplier[j];
    const bool stream_shifts =
        change < std::numeric_limits<double>::infinity() && scenario.multiplier[j] != 1.0;

    double prev = 0.0;
    std::uint64_t index = 0;
    while (prev <= time_cap && prev < best_alarm) {
      double next = prev + rng.exponential(prev >= change && stream_shifts ? post_mean : pre_mean);
      if (stream_shifts && prev < change && next > change) {
        // The interval straddling the change is restarted at the change
        // point with the shifted rate (exponential memorylessness).
        next = change + rng.exponential(post_mean);
      }
      ++index;
      const double gap = next - prev;
      prev = next;
      if (next > time_cap) break;
      const Decision d = chart.update(j, gap);
      if (d.signaled) {
        if (next < best_alarm) {
          best_alarm = next;
          out.signaled = true;
          out.sample_index = index;
          out.alarm_time = next;
          out.source = j;
          out.time_from_change =
              (change < std::numeric_limits<double>::infinity() && next > change)
                  ? next - change
                  : std::numeric_limits<double>::quiet_NaN();
        }
        break;
      }
    }
  }

  if (!out.signaled) {
    out.censored = true;
    out.alarm_time = time_cap;
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::vector<LogEvent> parse_event_log(std::istream& in,
                                      const std::vector<std::string>& stream_names) {
  if (stream_names.empty()) {
    throw std::invalid_argument("parse_event_log: stream name list is empty");
  }
  std::vector<LogEvent> events;
  std::string line;
  std::size_t line_no = 0;
  double last_time = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) {
      throw LogParseError("expected 'timestamp,stream_id'", line_no);
    }
    if (body.find(',', comma + 1) != std::string::npos) {
      throw LogParseError("too many fields", line_no);
    }
    const std::string time_field = trim(body.substr(0, comma));
    const std::string id_field = trim(body.substr(comma + 1));
    if (time_field.empty()) throw LogParseError("missing timestamp", line_no);
    if (id_field.empty()) throw LogParseError("missing stream id", line_no);

    double t = 0.0;
    try {
      std::size_t used = 0;
      t = std::stod(time_field, &used);
      if (used != time_field.size()) {
        throw LogParseError("malformed timestamp '" + time_field + "'", line_no);
      }
    } catch (const LogParseError&) {
      throw;
    } catch (const std::exception&) {
      throw LogParseError("malformed timestamp '" + time_field + "'", line_no);
    }
    if (!std::isfinite(t) || t < 0.0) {
      throw LogParseError("timestamp must be finite and nonnegative", line_no);
    }
    if (t < last_time) {
      throw LogParseError("timestamps must be nondecreasing", line_no);
    }

    const auto it = std::find(stream_names.begin(), stream_names.end(), id_field);
    if (it == stream_names.end()) {
      throw LogParseError("unknown stream id '" + id_field + "'", line_no);
    }

    events.push_back(LogEvent{t, static_cast<std::size_t>(it - stream_names.begin())});
    last_time = t;
  }
  return events;
}

namespace {

std::vector<AlarmRecord> replay_per_stream(std::span<const LogEvent> log,
                                           const MonitorSpec& spec) {
  std::size_t n_streams = 0;
  std::optional<PairedEwmaChart> ewma;
  std::optional<ShewhartTbeChart> shewhart;
  if (const auto* p = std::get_if<PewmaConfig>(&spec)) {
    ewma.emplace(*p);
    n_streams = 2;
  } else if (const auto* s = std::get_if<ShewhartTbeConfig>(&spec)) {
    shewhart.emplace(*s);
    n_streams = shewhart->stream_count();
  } else {
    throw std::invalid_argument(
        "replay_event_log: per-stream grouping needs a per-stream monitor");
  }

  std::vector<AlarmRecord> alarms;
  std::vector<double> last(n_streams, 0.0);
  std::vector<std::uint64_t> count(n_streams, 0);
  for (const LogEvent& ev : log) {
    if (ev.stream >= n_streams) {
      throw std::out_of_range("replay_event_log: stream index out of range");
    }
    const double gap = ev.time - last[ev.stream];
    last[ev.stream] = ev.time;
    ++count[ev.stream];
    const Decision d =
        ewma ? ewma->update_stream(ev.stream, gap) : shewhart->update(ev.stream, gap);
    if (d.signaled) {
      alarms.push_back(AlarmRecord{ev.time, count[ev.stream], d.source, d.statistic});
    }
  }
  return alarms;
}

std::vector<AlarmRecord> replay_vector_assembly(std::span<const LogEvent> log,
                                                const MonitorSpec& spec) {
  std::optional<MewmaChart> mewma;
  std::optional<PairedEwmaChart> ewma;
  if (const auto* m = std::get_if<MewmaConfig>(&spec)) {
    mewma.emplace(*m);
  } else if (const auto* p = std::get_if<PewmaConfig>(&spec)) {
    ewma.emplace(*p);
  } else {
    throw std::invalid_argument(
        "replay_event_log: vector assembly needs a vector monitor");
  }

  std::vector<AlarmRecord> alarms;
  std::array<std::deque<double>, 2> pending;
  double vector_start = 0.0;
  std::uint64_t ordinal = 0;
  for (const LogEvent& ev : log) {
    if (ev.stream >= 2) {
      throw std::out_of_range("replay_event_log: vector assembly expects two streams");
    }
    pending[ev.stream].push_back(ev.time);
    while (!pending[0].empty() && !pending[1].empty()) {
      const double t1 = pending[0].front();
      const double t2 = pending[1].front();
      pending[0].pop_front();
      pending[1].pop_front();
      // Events already waiting when the vector window opened contribute a
      // zero delay; the window closes at the later of the two arrivals.
      const TbePair y{std::max(0.0, t1 - vector_start), std::max(0.0, t2 - vector_start)};
      const double completion = std::max(t1, t2);
      ++ordinal;
      const Decision d = mewma ? mewma->update(y) : ewma->update(y);
      if (d.signaled) {
        alarms.push_back(AlarmRecord{completion, ordinal, d.source, d.statistic});
      }
      vector_start = std::max(vector_start, completion);
    }
  }
  return alarms;
}

}  // namespace

std::vector<AlarmRecord> replay_event_log(std::span<const LogEvent> log,
                                          const MonitorSpec& chart, Grouping grouping) {
  return grouping == Grouping::per_stream ? replay_per_stream(log, chart)
                                          : replay_vector_assembly(log, chart);
}

}  // namespace mtbe
