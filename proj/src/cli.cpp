#include "mtbe/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mtbe/charts.hpp"
#include "mtbe/gumbel.hpp"
#include "mtbe/scenarios.hpp"
#include "mtbe/simulation.hpp"

namespace mtbe {
namespace {

struct CliState {
  // model
  double theta1 = 1.0;
  double theta2 = 2.0;
  double delta = 1.0;
  // chart
  std::string family = "mewma";
  double lambda = 0.1;
  std::string direction = "lower";
  double limit_h = 0.0;
  double limit1 = 0.0;
  double limit2 = 0.0;
  double limit_c = 0.0;
  // shewhart limits (two streams)
  double sh_lower1 = 0.0;
  double sh_lower2 = 0.0;
  double sh_upper1 = 1e300;
  double sh_upper2 = 1e300;
  // experiment
  double target_ats0 = 200.0;
  std::uint64_t n_reps = 100000;
  std::uint64_t reps_per_eval = 20000;
  double rel_tol = 0.01;
  std::uint64_t burn_in = 50;
  std::uint64_t max_attempts = 1000;
  std::uint64_t cap_samples = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string mode = "steady";
  double shift1 = 1.0;
  double shift2 = 1.0;
  std::string models_sel = "1,2,3,4";
  std::string low_shifts = "0.5x1,1x0.5,0.5x0.5";
  std::string up_shifts = "2x1,1x2,2x2";
  // monitor
  std::string log_path;
  std::string grouping = "vector";
  std::string streams = "s1,s2";
  // output
  std::string table_csv = "table1.csv";
  std::string scatter_csv = "figure4.csv";
  std::string out_csv;
  bool quick = false;
  bool dump_config = false;
};

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string()
                                           : item.substr(b, e - b + 1));
  }
  return parts;
}

bool list_is_empty(const std::string& text) {
  return text.empty() || text == "none";
}

std::vector<ShiftSpec> parse_shift_list(const std::string& text) {
  std::vector<ShiftSpec> shifts;
  if (list_is_empty(text)) return shifts;
  for (const std::string& part : split_list(text, ',')) {
    const std::size_t x = part.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= part.size()) {
      throw std::invalid_argument("bad shift '" + part + "', expected m1xm2, e.g. 0.5x1");
    }
    ShiftSpec s;
    try {
      s.m1 = std::stod(part.substr(0, x));
      s.m2 = std::stod(part.substr(x + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad shift '" + part + "', expected m1xm2, e.g. 0.5x1");
    }
    if (!(s.m1 > 0.0) || !(s.m2 > 0.0)) {
      throw std::invalid_argument("shift multipliers must be positive in '" + part + "'");
    }
    shifts.push_back(s);
  }
  return shifts;
}

std::vector<std::size_t> parse_model_list(const std::string& text, std::size_t n_models) {
  std::vector<std::size_t> out;
  if (list_is_empty(text)) return out;
  for (const std::string& part : split_list(text, ',')) {
    std::size_t idx = 0;
    try {
      idx = static_cast<std::size_t>(std::stoul(part));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad model index '" + part + "'");
    }
    if (idx < 1 || idx > n_models) {
      throw std::invalid_argument("model index out of range: '" + part + "'");
    }
    out.push_back(idx);
  }
  return out;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

GumbelBveParams build_model(const CliState& st) {
  return GumbelBveParams(st.theta1, st.theta2, st.delta);
}

Direction build_direction(const CliState& st) {
  return st.direction == "upper" ? Direction::upper : Direction::lower;
}

/// Paired-chart limits: either both explicit limits or the proportional
/// scale c (limits c * theta0), but not both.
std::array<double, 2> pewma_limits(const CliState& st, const GumbelBveParams& model) {
  const bool has_explicit = st.limit1 > 0.0 || st.limit2 > 0.0;
  const bool has_scale = st.limit_c > 0.0;
  if (has_explicit && has_scale) {
    throw std::invalid_argument("give either chart.limit1/limit2 or chart.limit_c, not both");
  }
  if (has_scale) {
    return {st.limit_c * model.theta1(), st.limit_c * model.theta2()};
  }
  if (!(st.limit1 > 0.0) || !(st.limit2 > 0.0)) {
    throw std::invalid_argument("paired charts need chart.limit1 and chart.limit2 (or chart.limit_c)");
  }
  return {st.limit1, st.limit2};
}

VectorChartSpec build_vector_chart(const CliState& st, const GumbelBveParams& model,
                                   bool need_limits) {
  if (st.family == "mewma") {
    const MomentSummary mom = moments(model);
    MewmaConfig cfg;
    cfg.lambda = st.lambda;
    cfg.mean = mom.mean;
    cfg.covariance = mom.covariance;
    if (need_limits) {
      if (!(st.limit_h > 0.0)) {
        throw std::invalid_argument("the multivariate chart needs chart.limit_h > 0");
      }
      cfg.limit_h = st.limit_h;
    } else {
      cfg.limit_h = 1.0;  // placeholder; calibration installs the real limit
    }
    return cfg;
  }
  PewmaConfig cfg;
  cfg.lambda = st.lambda;
  cfg.theta0 = {model.theta1(), model.theta2()};
  cfg.direction = build_direction(st);
  if (need_limits) {
    cfg.limits = pewma_limits(st, model);
  } else {
    cfg.limits = {0.0, 0.0};  // placeholder; calibration installs real limits
  }
  return cfg;
}

CalibrationSettings build_calibration_settings(const CliState& st) {
  CalibrationSettings settings;
  settings.target_ats0 = st.target_ats0;
  settings.rel_tol = st.rel_tol;
  settings.reps_per_eval = st.reps_per_eval;
  settings.n_reps_final = st.n_reps;
  settings.seed = st.seed;
  settings.workers = st.workers;
  settings.cap_samples = st.cap_samples;
  settings.protocol = st.mode == "zero" ? CalibrationProtocol::total_time
                                        : CalibrationProtocol::steady_state;
  settings.steady.burn_in_samples = st.burn_in;
  settings.steady.max_attempts = st.max_attempts;
  return settings;
}

SimOptions build_sim_options(const CliState& st) {
  SimOptions options;
  options.n_runs = st.n_reps;
  options.seed = st.seed;
  options.cap_samples = st.cap_samples;
  options.workers = st.workers;
  options.mode = st.mode == "zero" ? AtsMode::zero_state : AtsMode::steady_state;
  options.steady.burn_in_samples = st.burn_in;
  options.steady.max_attempts = st.max_attempts;
  return options;
}

std::string limit_spec_of(const VectorChartSpec& chart) {
  if (const auto* m = std::get_if<MewmaConfig>(&chart)) {
    return "h=" + fmt("%.6g", m->limit_h);
  }
  const auto& p = std::get<PewmaConfig>(chart);
  const char* tag = p.direction == Direction::upper ? "U" : "L";
  return std::string(tag) + "1=" + fmt("%.6g", p.limits[0]) + ";" + tag + "2=" +
         fmt("%.6g", p.limits[1]);
}

int write_file(const std::string& path, const std::string& contents, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot open '" << path << "' for writing\n";
    return exit_input;
  }
  out << contents;
  out.flush();
  if (!out) {
    err << "error: failed while writing '" << path << "'\n";
    return exit_input;
  }
  return exit_ok;
}

int cmd_calibrate(const CliState& st, std::ostream& out, std::ostream& err) {
  if (st.family == "shewhart") {
    throw std::invalid_argument("calibrate covers the vector charts (mewma, pewma)");
  }
  const GumbelBveParams model = build_model(st);
  const VectorChartSpec prototype = build_vector_chart(st, model, /*need_limits=*/false);
  const CalibrationSettings settings = build_calibration_settings(st);
  const CalibrationResult result = calibrate(model, prototype, settings);

  const std::string limits = limit_spec_of(result.chart);
  const char* scalar_name = st.family == "mewma" ? "h" : "c";
  out << "method: " << st.family << "  lambda=" << fmt("%.6g", st.lambda);
  if (st.family == "pewma") out << "  direction=" << st.direction;
  out << "\n";
  out << "calibrated " << scalar_name << "=" << fmt("%.6g", result.scalar)
      << "  limits: " << limits << "\n";
  out << "achieved in-control ATS: " << format_estimate(result.achieved) << "\n";
  out << "mean samples to signal: " << fmt("%.2f", result.achieved.mean_samples) << "\n";
  out << "evaluations=" << result.evaluations << " bisect=" << result.bisect_iterations
      << " reps_per_eval=" << result.reps_per_eval << "\n";

  if (!st.out_csv.empty()) {
    std::ostringstream csv;
    csv << "method,direction,lambda,scalar,limit_spec,ats,stderr,n_runs,n_discarded,"
           "n_censored,evaluations,bisect_iterations\n";
    csv << st.family << ',' << (st.family == "mewma" ? "both" : st.direction.c_str())
        << ',' << fmt("%.6g", st.lambda) << ',' << fmt("%.6g", result.scalar) << ','
        << limits << ',' << fmt("%.6f", result.achieved.mean_ats) << ','
        << fmt("%.6f", result.achieved.std_error) << ',' << result.achieved.n_runs << ','
        << result.achieved.n_discarded << ',' << result.achieved.n_censored << ','
        << result.evaluations << ',' << result.bisect_iterations << '\n';
    const int rc = write_file(st.out_csv, csv.str(), err);
    if (rc != exit_ok) return rc;
  }
  if (!result.achieved.valid()) {
    err << "error: achieved estimate is invalid (censored runs above 0.1%)\n";
    return exit_invalid;
  }
  return exit_ok;
}

int cmd_ats(const CliState& st, std::ostream& out, std::ostream& err) {
  const GumbelBveParams model = build_model(st);
  const ShiftSpec shift{st.shift1, st.shift2};
  AtsEstimate est;
  std::string limits;

  if (st.family == "shewhart") {
    if (st.mode == "steady") {
      throw std::invalid_argument(
          "family=shewhart supports mode=zero only (in-control when the shift is 1x1)");
    }
    PointProcessScenario scenario;
    scenario.theta0 = {model.theta1(), model.theta2()};
    scenario.multiplier = {shift.m1, shift.m2};
    scenario.change_time = shift.is_null() ? kNeverShiftsTime : 0.0;
    ShewhartTbeConfig chart;
    chart.streams = {ShewhartStreamLimits{st.sh_lower1, st.sh_upper1},
                     ShewhartStreamLimits{st.sh_lower2, st.sh_upper2}};
    PointSimOptions options;
    options.n_runs = st.n_reps;
    options.seed = st.seed;
    options.time_cap = static_cast<double>(st.cap_samples);
    options.workers = st.workers;
    options.mode = AtsMode::zero_state;
    est = estimate_ats(scenario, chart, options);
    limits = "L1=" + fmt("%.6g", st.sh_lower1) + ";U1=" + fmt("%.6g", st.sh_upper1) +
             ";L2=" + fmt("%.6g", st.sh_lower2) + ";U2=" + fmt("%.6g", st.sh_upper2);
  } else {
    const VectorChartSpec chart = build_vector_chart(st, model, /*need_limits=*/true);
    VectorScenario scenario;
    scenario.in_control = model;
    scenario.shift = shift;
    const bool steady = st.mode == "steady";
    scenario.change_sample =
        steady ? st.burn_in : (shift.is_null() ? kNeverShifts : 0);
    est = estimate_ats(scenario, chart, build_sim_options(st));
    limits = limit_spec_of(chart);
  }

  out << "model: theta0=(" << fmt("%.6g", st.theta1) << ", " << fmt("%.6g", st.theta2)
      << ") delta=" << fmt("%.6g", st.delta) << "  shift=" << fmt("%.6g", shift.m1)
      << "x" << fmt("%.6g", shift.m2) << "  mode=" << st.mode << "\n";
  out << "chart: " << st.family << "  " << limits << "\n";
  out << "ATS: " << format_estimate(est) << "\n";
  out << "mean samples to signal: " << fmt("%.2f", est.mean_samples) << "\n";

  if (!st.out_csv.empty()) {
    std::ostringstream csv;
    csv << "model,shift1,shift2,direction,method,lambda,limit_spec,ats,stderr,n_runs,"
           "n_discarded,n_censored\n";
    csv << 0 << ',' << fmt("%.6g", shift.m1) << ',' << fmt("%.6g", shift.m2) << ','
        << st.direction << ',' << st.family << ',' << fmt("%.6g", st.lambda) << ','
        << limits << ',' << fmt("%.6f", est.mean_ats) << ','
        << fmt("%.6f", est.std_error) << ',' << est.n_runs << ',' << est.n_discarded
        << ',' << est.n_censored << '\n';
    const int rc = write_file(st.out_csv, csv.str(), err);
    if (rc != exit_ok) return rc;
  }
  if (!est.valid()) {
    err << "error: estimate is invalid (censored runs above 0.1%)\n";
    return exit_invalid;
  }
  return exit_ok;
}

int cmd_table1(const CliState& st, std::ostream& out, std::ostream& err) {
  Table1Spec spec = Table1Spec::study_defaults();
  const std::vector<GumbelBveParams> all_models = spec.models;
  spec.models.clear();
  for (std::size_t idx : parse_model_list(st.models_sel, all_models.size())) {
    spec.models.push_back(all_models[idx - 1]);
  }
  spec.lambda = st.lambda;
  spec.low_shifts = parse_shift_list(st.low_shifts);
  spec.up_shifts = parse_shift_list(st.up_shifts);
  spec.calibration = build_calibration_settings(st);
  spec.calibration.protocol = CalibrationProtocol::steady_state;
  spec.sim = build_sim_options(st);
  spec.sim.mode = AtsMode::steady_state;
  spec.progress = [&err](const std::string& msg) { err << "[table1] " << msg << "\n"; };

  const Table1Result result = run_table1(spec);

  if (!st.table_csv.empty()) {
    std::ostringstream csv;
    write_table1_csv(result, csv);
    const int rc = write_file(st.table_csv, csv.str(), err);
    if (rc != exit_ok) return rc;
  }
  if (!st.scatter_csv.empty()) {
    std::ostringstream csv;
    write_scatter_csv(result, csv);
    const int rc = write_file(st.scatter_csv, csv.str(), err);
    if (rc != exit_ok) return rc;
  }
  write_table1_human(result, out);

  for (const Table1Cell& cell : result.cells) {
    if (!cell.estimate.valid()) {
      err << "error: at least one estimate is invalid (censored runs above 0.1%)\n";
      return exit_invalid;
    }
  }
  return exit_ok;
}

int cmd_monitor(const CliState& st, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> streams = split_list(st.streams, ',');
  if (streams.empty()) throw std::invalid_argument("monitor.streams must name at least one stream");
  for (const std::string& name : streams) {
    if (name.empty()) throw std::invalid_argument("monitor.streams contains an empty name");
  }

  std::ifstream log(st.log_path);
  if (!log) {
    err << "error: cannot open event log '" << st.log_path << "'\n";
    return exit_input;
  }
  const std::vector<LogEvent> events = parse_event_log(log, streams);

  const GumbelBveParams model = build_model(st);
  MonitorSpec chart;
  if (st.family == "shewhart") {
    if (streams.size() != 2) {
      throw std::invalid_argument("family=shewhart expects exactly two streams here");
    }
    ShewhartTbeConfig cfg;
    cfg.streams = {ShewhartStreamLimits{st.sh_lower1, st.sh_upper1},
                   ShewhartStreamLimits{st.sh_lower2, st.sh_upper2}};
    chart = cfg;
  } else {
    const VectorChartSpec vc = build_vector_chart(st, model, /*need_limits=*/true);
    if (const auto* m = std::get_if<MewmaConfig>(&vc)) {
      chart = *m;
    } else {
      chart = std::get<PewmaConfig>(vc);
    }
  }

  const Grouping grouping =
      st.grouping == "per-stream" ? Grouping::per_stream : Grouping::vector_assembly;
  const std::vector<AlarmRecord> alarms = replay_event_log(events, chart, grouping);
  for (const AlarmRecord& alarm : alarms) {
    out << "alarm t=" << fmt("%.6g", alarm.time) << " index=" << alarm.index
        << " statistic=" << fmt("%.6g", alarm.statistic) << " source="
        << (alarm.source ? streams[*alarm.source] : std::string("-")) << "\n";
  }
  out << alarms.size() << " alarm(s)\n";
  return exit_ok;
}

// Writes options grouped into [section] headers (section = part of the option
// name before the first dot) and reads sectioned, dotted, or quoted keys back
// into the flat dotted option names the app registers.
class SectionedConfig : public CLI::ConfigBase {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string /*prefix*/) const override {
    std::ostringstream out;
    const std::string comment_lead = std::string(1, commentChar) + " ";
    if (write_description && !app->get_description().empty()) {
      out << comment_lead << app->get_description() << '\n';
    }
    std::string open_section;
    // Two passes: section-less keys must precede the first [section] header,
    // otherwise they would be re-read as members of that section.
    for (const bool sectioned : {false, true}) {
      for (const CLI::Option* opt : app->get_options({})) {
        if (!opt->get_configurable()) continue;
        std::string name = opt->get_single_name();
        if (name.empty()) continue;
        const std::size_t dot = name.find(parentSeparatorChar);
        if ((dot != std::string::npos) != sectioned) continue;

        std::string value = CLI::detail::ini_join(opt->reduced_results(), arraySeparator,
                                                  arrayStart, arrayEnd, stringQuote, literalQuote);
        if (value.empty() && default_also) {
          if (!opt->get_default_str().empty()) {
            value = CLI::detail::convert_arg_for_ini(opt->get_default_str(), stringQuote,
                                                     literalQuote, false);
          } else if (opt->get_expected_min() == 0) {
            value = "false";
          } else if (opt->get_run_callback_for_default()) {
            value = "\"\"";
          }
        }
        if (value.empty()) continue;
        if (!opt->get_fnames().empty()) {
          try {
            value = opt->get_flag_value(name, value);
          } catch (const CLI::ArgumentMismatch&) {
            value = CLI::detail::ini_join(opt->results(), arraySeparator, arrayStart, arrayEnd,
                                          stringQuote, literalQuote);
          }
        }
        if (sectioned) {
          const std::string section = name.substr(0, dot);
          name = name.substr(dot + 1);
          if (section != open_section) {
            out << "\n[" << section << "]\n";
            open_section = section;
          }
        }
        if (write_description && opt->has_description()) {
          out << '\n' << comment_lead << opt->get_description() << '\n';
        }
        out << name << valueDelimiter << value << '\n';
      }
    }
    return out.str();
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> flat;
    for (const CLI::ConfigItem& item : CLI::ConfigBase::from_config(input)) {
      if (item.name == "++" || item.name == "--") continue;  // section open/close markers
      CLI::ConfigItem merged;
      for (const std::string& parent : item.parents) {
        merged.name += parent;
        merged.name += parentSeparatorChar;
      }
      merged.name += item.name;
      merged.inputs = item.inputs;
      flat.push_back(std::move(merged));
    }
    return flat;
  }
};

void attach_options(CLI::App& app, CliState& st) {
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "configuration file (key=value with [sections])");
  app.config_formatter(std::make_shared<SectionedConfig>());
  app.allow_config_extras(false);

  app.add_option("--model.theta1", st.theta1, "in-control mean TBE of stream 1")
      ->check(CLI::PositiveNumber);
  app.add_option("--model.theta2", st.theta2, "in-control mean TBE of stream 2")
      ->check(CLI::PositiveNumber);
  app.add_option("--model.delta", st.delta, "dependence parameter, 1 = independent")
      ->check(CLI::Range(0.05, 1.0));

  app.add_option("--chart.family", st.family, "chart family")
      ->check(CLI::IsMember({"mewma", "pewma", "shewhart"}));
  app.add_option("--chart.lambda", st.lambda, "EWMA smoothing constant")
      ->check(CLI::Range(1e-9, 1.0));
  app.add_option("--chart.direction", st.direction, "paired-chart direction")
      ->check(CLI::IsMember({"lower", "upper"}));
  app.add_option("--chart.limit_h", st.limit_h, "multivariate chart limit");
  app.add_option("--chart.limit1", st.limit1, "paired chart limit, stream 1");
  app.add_option("--chart.limit2", st.limit2, "paired chart limit, stream 2");
  app.add_option("--chart.limit_c", st.limit_c,
                 "paired chart proportional scale (limits c*theta0)");

  app.add_option("--shewhart.lower1", st.sh_lower1, "per-event lower limit, stream 1");
  app.add_option("--shewhart.upper1", st.sh_upper1, "per-event upper limit, stream 1");
  app.add_option("--shewhart.lower2", st.sh_lower2, "per-event lower limit, stream 2");
  app.add_option("--shewhart.upper2", st.sh_upper2, "per-event upper limit, stream 2");

  app.add_option("--experiment.target_ats0", st.target_ats0,
                 "in-control ATS target for calibration")
      ->check(CLI::PositiveNumber);
  app.add_option("--experiment.n_reps", st.n_reps, "Monte Carlo runs per estimate")
      ->check(CLI::PositiveNumber);
  app.add_option("--experiment.reps_per_eval", st.reps_per_eval,
                 "runs per calibration search evaluation")
      ->check(CLI::PositiveNumber);
  app.add_option("--experiment.rel_tol", st.rel_tol, "calibration relative tolerance");
  app.add_option("--experiment.burn_in", st.burn_in,
                 "in-control samples before the shift (steady state)");
  app.add_option("--experiment.max_attempts", st.max_attempts,
                 "regeneration budget per steady-state run");
  app.add_option("--experiment.cap_samples", st.cap_samples,
                 "run length cap (samples, or time units for shewhart)");
  app.add_option("--experiment.seed", st.seed, "base seed")->envname("MTBE_SEED");
  app.add_option("--experiment.workers", st.workers,
                 "worker threads (0 = hardware concurrency; never changes results)")
      ->envname("MTBE_WORKERS");
  app.add_option("--experiment.mode", st.mode, "ATS accounting mode")
      ->check(CLI::IsMember({"steady", "zero"}));
  app.add_option("--experiment.shift1", st.shift1, "scale multiplier, stream 1")
      ->check(CLI::PositiveNumber);
  app.add_option("--experiment.shift2", st.shift2, "scale multiplier, stream 2")
      ->check(CLI::PositiveNumber);
  app.add_option("--experiment.models", st.models_sel,
                 "study models to include, e.g. 1,3 (none = empty)");
  app.add_option("--experiment.low_shifts", st.low_shifts,
                 "downward shift grid, e.g. 0.5x1,0.5x0.5 (none = empty)");
  app.add_option("--experiment.up_shifts", st.up_shifts,
                 "upward shift grid, e.g. 2x1,2x2 (none = empty)");

  app.add_option("--monitor.log", st.log_path, "event log file (timestamp,stream_id)");
  app.add_option("--monitor.grouping", st.grouping, "how events feed the chart")
      ->check(CLI::IsMember({"vector", "per-stream"}));
  app.add_option("--monitor.streams", st.streams, "comma-separated stream names");

  app.add_option("--output.table_csv", st.table_csv, "grid CSV path (empty = skip)");
  app.add_option("--output.scatter_csv", st.scatter_csv,
                 "scatter CSV path (empty = skip)");
  app.add_option("--output.csv", st.out_csv, "optional CSV path for calibrate/ats");

  app.add_flag("--quick", st.quick,
               "CI-scale repetitions (n_reps=10000, reps_per_eval=2000)");
  app.add_flag("--dump-config", st.dump_config,
               "print the effective configuration and exit")
      ->configurable(false);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bivariate time-between-events monitoring: charts, ATS studies, logs"};
  app.name("mtbe");
  CliState st;
  attach_options(app, st);

  CLI::App* sub_calibrate =
      app.add_subcommand("calibrate", "find chart limits for a target in-control ATS");
  CLI::App* sub_ats = app.add_subcommand("ats", "estimate the ATS of a configured chart");
  CLI::App* sub_table1 =
      app.add_subcommand("table1", "run the full chart-comparison study grid");
  CLI::App* sub_monitor = app.add_subcommand("monitor", "replay an event log");
  for (CLI::App* sub : {sub_calibrate, sub_ats, sub_table1, sub_monitor}) {
    sub->fallthrough();
  }
  app.require_subcommand(0, 1);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mtbe");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }

  if (st.quick) {
    st.n_reps = 10000;
    st.reps_per_eval = 2000;
  }
  if (st.dump_config) {
    out << app.config_to_str(true, true);
    return exit_ok;
  }

  try {
    if (sub_calibrate->parsed()) return cmd_calibrate(st, out, err);
    if (sub_ats->parsed()) return cmd_ats(st, out, err);
    if (sub_table1->parsed()) return cmd_table1(st, out, err);
    if (sub_monitor->parsed()) {
      if (st.log_path.empty()) {
        err << "error: monitor needs --monitor.log\n";
        return exit_config;
      }
      return cmd_monitor(st, out, err);
    }
    err << "error: a subcommand is required (calibrate, ats, table1, monitor)\n";
    err << app.help();
    return exit_config;
  } catch (const LogParseError& e) {
    err << "error: " << st.log_path << " line " << e.line << ": " << e.what() << "\n";
    return exit_input;
  } catch (const CalibrationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_calibration;
  } catch (const StarvationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_calibration;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_internal;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mtbe
