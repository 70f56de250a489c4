#include "mtbe/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "mtbe/random.hpp"

namespace mtbe {

namespace {

std::uint64_t mix_tag(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(splitmix64(base) + tag);
}

struct SlotResult {
  double value = 0.0;
  double samples = 0.0;
  std::uint64_t discarded = 0;
  bool censored = false;
  bool starved = false;
};

/// Runs fn(slot) for every slot index, writing into a slot-indexed vector so
/// the outcome is identical for any worker count or scheduling order.
template <typename Fn>
std::vector<SlotResult> run_slots(std::uint64_t n, unsigned workers, Fn&& fn) {
  std::vector<SlotResult> results(n);
  unsigned w = workers != 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
  w = static_cast<unsigned>(std::min<std::uint64_t>(w, n));
  if (w <= 1) {
    for (std::uint64_t r = 0; r < n; ++r) results[r] = fn(r);
    return results;
  }

  std::atomic<std::uint64_t> next{0};
  const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (16ull * w));
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          const std::uint64_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
          if (begin >= n) return;
          const std::uint64_t end = std::min(n, begin + chunk);
          for (std::uint64_t r = begin; r < end; ++r) results[r] = fn(r);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

/// Deterministic fold in slot order (Welford updates), so the estimate does
/// not depend on how slots were distributed across workers.
AtsEstimate fold_slots(const std::vector<SlotResult>& slots) {
  std::uint64_t starved = 0;
  AtsEstimate est;
  double mean = 0.0;
  double m2 = 0.0;
  double mean_samples = 0.0;
  for (const SlotResult& s : slots) {
    if (s.starved) {
      ++starved;
      est.n_discarded += s.discarded;
      continue;
    }
    est.n_discarded += s.discarded;
    est.n_censored += s.censored ? 1 : 0;
    ++est.n_runs;
    const double n = static_cast<double>(est.n_runs);
    const double d = s.value - mean;
    mean += d / n;
    m2 += d * (s.value - mean);
    mean_samples += (s.samples - mean_samples) / n;
  }
  if (starved > 0) {
    throw StarvationError("steady-state estimation: " + std::to_string(starved) +
                              " slot(s) exhausted the regeneration budget "
                              "(limits too tight to survive the burn-in)",
                          starved);
  }
  est.mean_ats = mean;
  est.mean_samples = mean_samples;
  est.std_error = est.n_runs >= 2
                      ? std::sqrt(m2 / static_cast<double>(est.n_runs - 1) /
                                  static_cast<double>(est.n_runs))
                      : std::numeric_limits<double>::quiet_NaN();
  return est;
}

template <typename Chart>
AtsEstimate estimate_vector_ats(const VectorScenario& scenario, const Chart& prototype,
                                const SimOptions& options) {
  const bool steady = options.mode == AtsMode::steady_state;
  const std::uint64_t max_attempts = steady ? std::max<std::uint64_t>(1, options.steady.max_attempts) : 1;
  const std::vector<SlotResult> slots =
      run_slots(options.n_runs, options.workers, [&](std::uint64_t r) {
        SlotResult res;
        for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
          Rng rng(derive_seed(options.seed, r, attempt));
          const RunOutcome out =
              run_vector_scenario(scenario, prototype, options.cap_samples, rng);
          if (steady) {
            if (out.signaled && out.sample_index <= scenario.change_sample) {
              ++res.discarded;
              continue;
            }
            res.value = out.signaled ? out.time_from_change
                                     : out.alarm_time - out.change_time;
            res.samples =
                static_cast<double>(out.sample_index - scenario.change_sample);
          } else {
            res.value = out.alarm_time;
            res.samples = static_cast<double>(out.sample_index);
          }
          res.censored = out.censored;
          return res;
        }
        res.starved = true;
        return res;
      });
  return fold_slots(slots);
}

}  // namespace

AtsEstimate estimate_ats(const VectorScenario& scenario, const VectorChartSpec& chart,
                         const SimOptions& options) {
  if (options.n_runs < 1) throw std::invalid_argument("estimate_ats: n_runs must be >= 1");
  if (options.cap_samples < 1) {
    throw std::invalid_argument("estimate_ats: cap_samples must be >= 1");
  }
  if (options.mode == AtsMode::steady_state) {
    if (scenario.change_sample == kNeverShifts) {
      throw std::invalid_argument(
          "estimate_ats: steady-state mode needs a finite change sample");
    }
    if (options.cap_samples <= scenario.change_sample) {
      throw std::invalid_argument(
          "estimate_ats: cap_samples must exceed the burn-in length");
    }
  }
  if (const auto* m = std::get_if<MewmaConfig>(&chart)) {
    return estimate_vector_ats(scenario, MewmaChart(*m), options);
  }
  return estimate_vector_ats(scenario, PairedEwmaChart(std::get<PewmaConfig>(chart)),
                             options);
}

AtsEstimate estimate_ats(const PointProcessScenario& scenario,
                         const ShewhartTbeConfig& chart, const PointSimOptions& options) {
  if (options.n_runs < 1) throw std::invalid_argument("estimate_ats: n_runs must be >= 1");
  if (!(options.time_cap > 0.0)) {
    throw std::invalid_argument("estimate_ats: time_cap must be positive");
  }
  const bool steady = options.mode == AtsMode::steady_state;
  if (steady) {
    if (!(scenario.change_time < std::numeric_limits<double>::infinity())) {
      throw std::invalid_argument(
          "estimate_ats: steady-state mode needs a finite change time");
    }
    if (options.time_cap <= scenario.change_time) {
      throw std::invalid_argument("estimate_ats: time_cap must exceed the change time");
    }
  }
  const ShewhartTbeChart prototype(chart);
  const std::uint64_t max_attempts = steady ? std::max<std::uint64_t>(1, options.max_attempts) : 1;
  const std::vector<SlotResult> slots =
      run_slots(options.n_runs, options.workers, [&](std::uint64_t r) {
        SlotResult res;
        for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
          Rng rng(derive_seed(options.seed, r, attempt));
          const RunOutcome out =
              run_point_process_scenario(scenario, prototype, options.time_cap, rng);
          if (steady) {
            if (out.signaled && !(out.alarm_time > scenario.change_time)) {
              ++res.discarded;
              continue;
            }
            res.value = out.alarm_time - scenario.change_time;
          } else {
            res.value = out.alarm_time;
          }
          res.samples = static_cast<double>(out.sample_index);
          res.censored = out.censored;
          return res;
        }
        res.starved = true;
        return res;
      });
  return fold_slots(slots);
}

double shewhart_single_stream_ats0(double theta0, const ShewhartStreamLimits& limits) {
  if (!(theta0 > 0.0)) {
    throw std::invalid_argument("shewhart_single_stream_ats0: theta0 must be positive");
  }
  if (!(limits.lower >= 0.0) || !(limits.upper > limits.lower)) {
    throw std::invalid_argument("shewhart_single_stream_ats0: need 0 <= lower < upper");
  }
  const double p = std::exp(-limits.upper / theta0) + 1.0 - std::exp(-limits.lower / theta0);
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return theta0 / p;
}

namespace {

/// The calibration search runs over a coordinate x in (0, inf) chosen so the
/// in-control ATS is nondecreasing in x for every chart family:
///   multivariate chart   h = x
///   paired upper charts  c = 1 + x   (limits c * theta0)
///   paired lower charts  c = exp(-x)
double scalar_from_x(const VectorChartSpec& prototype, double x) {
  if (std::holds_alternative<MewmaConfig>(prototype)) return x;
  const auto& p = std::get<PewmaConfig>(prototype);
  // The floor keeps c * theta0 a valid (positive) limit when exp(-x)
  // underflows during bracket expansion; such a chart never signals anyway.
  return p.direction == Direction::upper ? 1.0 + x
                                         : std::max(std::exp(-x), std::numeric_limits<double>::min());
}

VectorChartSpec instantiate(const VectorChartSpec& prototype, double x) {
  if (const auto* m = std::get_if<MewmaConfig>(&prototype)) {
    MewmaConfig out = *m;
    out.limit_h = x;
    return out;
  }
  PewmaConfig out = std::get<PewmaConfig>(prototype);
  const double c = scalar_from_x(prototype, x);
  out.limits = {c * out.theta0[0], c * out.theta0[1]};
  return out;
}

double initial_guess(const VectorChartSpec& prototype) {
  if (std::holds_alternative<MewmaConfig>(prototype)) return 5.0;
  return std::get<PewmaConfig>(prototype).direction == Direction::upper ? 0.5 : 0.7;
}

struct SearchOutcome {
  double x = 0.0;
  AtsEstimate estimate;   // estimate at the accepted x
  std::uint64_t evals = 0;
  std::uint64_t bisects = 0;
};

/// Geometric bracketing followed by bisection against one fixed
/// common-random-numbers realization of the ATS curve. `eval` must be a
/// deterministic (per seed) nondecreasing function of x. Stops once the
/// evaluated ATS is within tol_abs of the target and returns that point.
template <typename EvalFn>
SearchOutcome bracket_and_bisect(EvalFn&& eval, double x_start, double expand,
                                 double target, double tol_abs, unsigned max_bracket,
                                 unsigned max_bisect) {
  SearchOutcome out;
  double x = x_start;
  AtsEstimate est = eval(x);
  ++out.evals;
  double seen_lo = est.mean_ats;
  double seen_hi = est.mean_ats;
  out.x = x;
  out.estimate = est;
  if (std::abs(est.mean_ats - target) <= tol_abs) return out;

  double lo = 0.0;
  double hi = 0.0;
  bool have_lo = false;
  bool have_hi = false;
  if (est.mean_ats <= target) {
    lo = x;
    have_lo = true;
  } else {
    hi = x;
    have_hi = true;
  }
  for (unsigned step = 0; step < max_bracket && !(have_lo && have_hi); ++step) {
    x = have_lo && !have_hi ? x * expand : x / expand;
    est = eval(x);
    ++out.evals;
    seen_lo = std::min(seen_lo, est.mean_ats);
    seen_hi = std::max(seen_hi, est.mean_ats);
    out.x = x;
    out.estimate = est;
    if (std::abs(est.mean_ats - target) <= tol_abs) return out;
    if (est.mean_ats <= target) {
      lo = x;
      have_lo = true;
    } else {
      hi = x;
      have_hi = true;
    }
  }
  if (!(have_lo && have_hi)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "calibrate: failed to bracket target %.6g (ATS seen: %.6g .. %.6g)",
                  target, seen_lo, seen_hi);
    throw CalibrationError(buf, seen_lo, seen_hi);
  }

  for (unsigned iter = 0; iter < max_bisect; ++iter) {
    const double mid = 0.5 * (lo + hi);
    est = eval(mid);
    ++out.evals;
    ++out.bisects;
    out.x = mid;
    out.estimate = est;
    if (std::abs(est.mean_ats - target) <= tol_abs) return out;
    if (est.mean_ats < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-9 * std::max(1.0, hi)) break;
  }
  return out;
}

}  // namespace

CalibrationResult calibrate(const GumbelBveParams& in_control,
                            const VectorChartSpec& prototype,
                            const CalibrationSettings& settings) {
  if (!(settings.target_ats0 > 0.0)) {
    throw std::invalid_argument("calibrate: target ATS must be positive");
  }
  if (!(settings.rel_tol > 0.0) || settings.rel_tol > 0.1) {
    throw std::invalid_argument("calibrate: rel_tol must lie in (0, 0.1]");
  }
  if (settings.reps_per_eval < 2 || settings.n_reps_final < 2) {
    throw std::invalid_argument("calibrate: needs at least 2 runs per estimate");
  }

  const bool steady = settings.protocol == CalibrationProtocol::steady_state;
  VectorScenario scenario;
  scenario.in_control = in_control;
  scenario.shift = ShiftSpec{1.0, 1.0};
  scenario.change_sample = steady ? settings.steady.burn_in_samples : kNeverShifts;

  SimOptions eval_options;
  eval_options.n_runs = settings.reps_per_eval;
  eval_options.seed = mix_tag(settings.seed, 0x5ea7c4);
  eval_options.cap_samples = settings.cap_samples;
  eval_options.workers = settings.workers;
  eval_options.mode = steady ? AtsMode::steady_state : AtsMode::zero_state;
  eval_options.steady = settings.steady;

  CalibrationResult result;
  result.reps_per_eval = settings.reps_per_eval;

  // Common random numbers: within a phase every evaluation reuses the same
  // per-slot seeds, so the evaluated curve is one fixed nondecreasing
  // function of x and bisection converges as in the deterministic case.
  const auto make_eval = [&](SimOptions options) {
    return [&, options](double x) -> AtsEstimate {
      try {
        return estimate_ats(scenario, instantiate(prototype, x), options);
      } catch (const StarvationError&) {
        AtsEstimate none;  // limits so tight nothing survives the burn-in
        none.n_runs = options.n_runs;
        return none;
      }
    };
  };

  const double target = settings.target_ats0;
  const double tol_abs = settings.rel_tol * target;

  // Phase 1: coarse search at reps_per_eval runs.
  const SearchOutcome coarse = bracket_and_bisect(
      make_eval(eval_options), initial_guess(prototype), 2.0, target, tol_abs,
      settings.max_bracket_steps, settings.max_bisect_steps);

  // Phase 2: polish at full size on fresh seeds, starting from the coarse
  // solution. The accepted point's estimate doubles as the validation run.
  SimOptions final_options = eval_options;
  final_options.n_runs = settings.n_reps_final;
  final_options.seed = mix_tag(settings.seed, 0xf17a1);
  const SearchOutcome fine = bracket_and_bisect(
      make_eval(final_options), coarse.x, 1.25, target, tol_abs,
      settings.max_bracket_steps, settings.max_bisect_steps);

  result.evaluations = coarse.evals + fine.evals;
  result.bisect_iterations = coarse.bisects + fine.bisects;
  result.scalar = scalar_from_x(prototype, fine.x);
  result.chart = instantiate(prototype, fine.x);
  result.achieved = fine.estimate;

  // Bisection can exhaust its budget without meeting the tolerance when the
  // target sits outside what the chart can reach (e.g. everything censors at
  // the cap). Refuse to hand back an off-target calibration as a success.
  const double achieved = result.achieved.mean_ats;
  const double se = result.achieved.std_error;
  const double slack = tol_abs + (std::isfinite(se) ? 4.0 * se : 0.0);
  if (!std::isfinite(achieved) || std::abs(achieved - target) > slack) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "calibrate: could not bracket target %.6g within tolerance; "
                  "search settled at ATS %.6g",
                  target, achieved);
    throw CalibrationError(buf, std::min(achieved, target), achieved);
  }
  return result;
}

Table1Spec Table1Spec::study_defaults() {
  Table1Spec spec;
  spec.models = {GumbelBveParams(1.0, 2.0, 1.0), GumbelBveParams(1.0, 2.0, 0.5),
                 GumbelBveParams(10.0, 2.0, 1.0), GumbelBveParams(10.0, 2.0, 0.5)};
  spec.lambda = 0.1;
  spec.low_shifts = {ShiftSpec{0.5, 1.0}, ShiftSpec{1.0, 0.5}, ShiftSpec{0.5, 0.5}};
  spec.up_shifts = {ShiftSpec{2.0, 1.0}, ShiftSpec{1.0, 2.0}, ShiftSpec{2.0, 2.0}};
  return spec;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string mewma_limit_spec(double h) { return "h=" + fmt("%.6g", h); }

std::string pewma_limit_spec(const PewmaConfig& cfg) {
  const char* tag = cfg.direction == Direction::upper ? "U" : "L";
  return std::string(tag) + "1=" + fmt("%.6g", cfg.limits[0]) + ";" + tag + "2=" +
         fmt("%.6g", cfg.limits[1]);
}

void note(const Table1Spec& spec, const std::string& msg) {
  if (spec.progress) spec.progress(msg);
}

}  // namespace

Table1Result run_table1(const Table1Spec& spec) {
  Table1Result result;
  result.lambda = spec.lambda;
  result.models = spec.models;
  const bool any_low = !spec.low_shifts.empty();
  const bool any_up = !spec.up_shifts.empty();
  if (spec.models.empty() || (!any_low && !any_up)) return result;

  for (std::size_t m = 0; m < spec.models.size(); ++m) {
    const GumbelBveParams& model = spec.models[m];
    const MomentSummary mom = moments(model);

    CalibrationSettings cal = spec.calibration;
    cal.seed = mix_tag(spec.calibration.seed, 16 * m + 1);
    MewmaConfig mewma_proto;
    mewma_proto.lambda = spec.lambda;
    mewma_proto.mean = mom.mean;
    mewma_proto.covariance = mom.covariance;
    note(spec, "calibrating model " + std::to_string(m + 1) + " multivariate chart");
    result.mewma_limits.push_back(calibrate(model, mewma_proto, cal));

    PewmaConfig pewma_proto;
    pewma_proto.lambda = spec.lambda;
    pewma_proto.theta0 = {model.theta1(), model.theta2()};
    if (any_low) {
      pewma_proto.direction = Direction::lower;
      cal.seed = mix_tag(spec.calibration.seed, 16 * m + 2);
      note(spec, "calibrating model " + std::to_string(m + 1) + " lower paired charts");
      result.pewma_lower_limits.push_back(calibrate(model, pewma_proto, cal));
    }
    if (any_up) {
      pewma_proto.direction = Direction::upper;
      cal.seed = mix_tag(spec.calibration.seed, 16 * m + 3);
      note(spec, "calibrating model " + std::to_string(m + 1) + " upper paired charts");
      result.pewma_upper_limits.push_back(calibrate(model, pewma_proto, cal));
    }
  }

  std::uint64_t cell_tag = 0;
  for (std::size_t m = 0; m < spec.models.size(); ++m) {
    const GumbelBveParams& model = spec.models[m];
    const CalibrationResult& mewma_cal = result.mewma_limits[m];
    const std::string mewma_limits =
        mewma_limit_spec(std::get<MewmaConfig>(mewma_cal.chart).limit_h);

    const auto emit_block = [&](Direction dir, const std::vector<ShiftSpec>& shifts,
                                const CalibrationResult& pewma_cal) {
      const std::string pewma_limits =
          pewma_limit_spec(std::get<PewmaConfig>(pewma_cal.chart));

      // Null-shift rows reuse the calibration validation estimates.
      result.cells.push_back(Table1Cell{m + 1, ShiftSpec{1.0, 1.0}, dir, Method::mewma,
                                        spec.lambda, mewma_limits, mewma_cal.achieved});
      result.cells.push_back(Table1Cell{m + 1, ShiftSpec{1.0, 1.0}, dir, Method::pewma,
                                        spec.lambda, pewma_limits, pewma_cal.achieved});

      for (const ShiftSpec& shift : shifts) {
        VectorScenario scenario;
        scenario.in_control = model;
        scenario.shift = shift;
        scenario.change_sample = spec.sim.steady.burn_in_samples;

        SimOptions options = spec.sim;
        options.mode = AtsMode::steady_state;

        const std::string label = fmt("%.6g", shift.m1) + "x" + fmt("%.6g", shift.m2);
        options.seed = mix_tag(spec.sim.seed, 1000 + cell_tag);
        ++cell_tag;
        note(spec, "model " + std::to_string(m + 1) + " shift " + label +
                       " multivariate chart");
        result.cells.push_back(Table1Cell{m + 1, shift, dir, Method::mewma, spec.lambda,
                                          mewma_limits,
                                          estimate_ats(scenario, mewma_cal.chart, options)});

        options.seed = mix_tag(spec.sim.seed, 1000 + cell_tag);
        ++cell_tag;
        note(spec, "model " + std::to_string(m + 1) + " shift " + label +
                       " paired charts");
        result.cells.push_back(Table1Cell{m + 1, shift, dir, Method::pewma, spec.lambda,
                                          pewma_limits,
                                          estimate_ats(scenario, pewma_cal.chart, options)});
      }
    };

    if (any_low) emit_block(Direction::lower, spec.low_shifts, result.pewma_lower_limits[m]);
    if (any_up) emit_block(Direction::upper, spec.up_shifts, result.pewma_upper_limits[m]);
  }
  return result;
}

namespace {

const char* direction_name(Direction d) {
  return d == Direction::lower ? "lower" : "upper";
}

const char* method_name(Method m) { return m == Method::mewma ? "mewma" : "pewma"; }

}  // namespace

void write_table1_csv(const Table1Result& result, std::ostream& out) {
  out << "model,shift1,shift2,direction,method,lambda,limit_spec,ats,stderr,n_runs,"
         "n_discarded,n_censored\n";
  for (const Table1Cell& c : result.cells) {
    out << c.model << ',' << fmt("%.6g", c.shift.m1) << ',' << fmt("%.6g", c.shift.m2)
        << ',' << direction_name(c.direction) << ',' << method_name(c.method) << ','
        << fmt("%.6g", c.lambda) << ',' << c.limit_spec << ','
        << fmt("%.6f", c.estimate.mean_ats) << ',' << fmt("%.6f", c.estimate.std_error)
        << ',' << c.estimate.n_runs << ',' << c.estimate.n_discarded << ','
        << c.estimate.n_censored << '\n';
  }
}

void write_scatter_csv(const Table1Result& result, std::ostream& out) {
  out << "model,shift_label,mewma_ats,pewma_ats\n";
  for (std::size_t i = 0; i + 1 < result.cells.size(); ++i) {
    const Table1Cell& a = result.cells[i];
    const Table1Cell& b = result.cells[i + 1];
    if (a.method != Method::mewma || b.method != Method::pewma) continue;
    if (a.shift.is_null()) continue;  // scatter covers the out-of-control grid
    out << a.model << ',' << fmt("%.6g", a.shift.m1) << 'x' << fmt("%.6g", a.shift.m2)
        << ',' << fmt("%.6f", a.estimate.mean_ats) << ','
        << fmt("%.6f", b.estimate.mean_ats) << '\n';
  }
}

std::string format_estimate(const AtsEstimate& e) {
  std::string s = fmt("%.2f", e.mean_ats) + " +/- " + fmt("%.2f", e.std_error);
  s += " (n=" + std::to_string(e.n_runs);
  if (e.n_discarded > 0) s += ", discarded=" + std::to_string(e.n_discarded);
  if (e.n_censored > 0) s += ", censored=" + std::to_string(e.n_censored);
  s += ")";
  return s;
}

void write_table1_human(const Table1Result& result, std::ostream& out) {
  if (result.cells.empty()) {
    out << "no cells to report\n";
    return;
  }
  char line[256];
  std::size_t pewma_wins = 0;
  std::size_t pairs = 0;
  std::size_t current_model = 0;
  for (std::size_t i = 0; i + 1 < result.cells.size(); i += 2) {
    const Table1Cell& a = result.cells[i];
    const Table1Cell& b = result.cells[i + 1];
    if (a.model != current_model) {
      current_model = a.model;
      const GumbelBveParams& p = result.models[current_model - 1];
      std::snprintf(line, sizeof(line),
                    "\nModel %zu: theta0=(%.6g, %.6g), delta=%.6g, lambda=%.6g\n",
                    current_model, p.theta1(), p.theta2(), p.delta(), result.lambda);
      out << line;
      const auto limits_of = [&](const std::vector<CalibrationResult>& v) -> std::string {
        if (v.size() < current_model) return "-";
        const CalibrationResult& c = v[current_model - 1];
        if (const auto* mw = std::get_if<MewmaConfig>(&c.chart)) {
          return mewma_limit_spec(mw->limit_h);
        }
        return pewma_limit_spec(std::get<PewmaConfig>(c.chart));
      };
      out << "  limits: MEWMA " << limits_of(result.mewma_limits) << "   lower "
          << limits_of(result.pewma_lower_limits) << "   upper "
          << limits_of(result.pewma_upper_limits) << "\n";
      std::snprintf(line, sizeof(line), "  %-9s %-11s %-26s %-26s %s\n", "direction",
                    "shift", "MEWMA ATS (SE)", "PEWMA ATS (SE)", "best");
      out << line;
    }
    const std::string shift_label =
        a.shift.is_null() ? std::string("in-control")
                          : fmt("%.6g", a.shift.m1) + "x" + fmt("%.6g", a.shift.m2);
    const std::string mewma_s =
        fmt("%.2f", a.estimate.mean_ats) + " (" + fmt("%.3f", a.estimate.std_error) + ")";
    const std::string pewma_s =
        fmt("%.2f", b.estimate.mean_ats) + " (" + fmt("%.3f", b.estimate.std_error) + ")";
    const char* best = "";
    if (!a.shift.is_null()) {
      ++pairs;
      if (b.estimate.mean_ats <= a.estimate.mean_ats) {
        ++pewma_wins;
        best = "pewma*";
      } else {
        best = "mewma*";
      }
    }
    std::snprintf(line, sizeof(line), "  %-9s %-11s %-26s %-26s %s\n",
                  direction_name(a.direction), shift_label.c_str(), mewma_s.c_str(),
                  pewma_s.c_str(), best);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "\npaired univariate charts best (ats <= mewma) in %zu of %zu "
                "out-of-control cells\n",
                pewma_wins, pairs);
  out << line;
}

}  // namespace mtbe
