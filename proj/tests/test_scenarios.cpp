#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mtbe/scenarios.hpp"
#include "test_support.hpp"

using mtbe::AlarmRecord;
using mtbe::Decision;
using mtbe::Direction;
using mtbe::GumbelBveParams;
using mtbe::Grouping;
using mtbe::kNeverShifts;
using mtbe::kNeverShiftsTime;
using mtbe::LogEvent;
using mtbe::LogParseError;
using mtbe::MewmaChart;
using mtbe::MewmaConfig;
using mtbe::MonitorSpec;
using mtbe::PairedEwmaChart;
using mtbe::PewmaConfig;
using mtbe::PointProcessScenario;
using mtbe::Rng;
using mtbe::RunOutcome;
using mtbe::ShewhartTbeChart;
using mtbe::ShewhartTbeConfig;
using mtbe::ShiftSpec;
using mtbe::Sym2;
using mtbe::TbePair;
using mtbe::VectorScenario;

namespace {

// Minimal charts for exercising the vector-scenario runner in isolation.
struct AlwaysSignalChart {
    void reset() {}
    Decision update(const TbePair&) { return Decision{true, std::nullopt, 1.0}; }
};

struct NeverSignalChart {
    void reset() {}
    Decision update(const TbePair&) { return Decision{false, std::nullopt, 0.0}; }
};

struct SignalAtChart {
    std::uint64_t target = 1;
    std::uint64_t seen = 0;
    void reset() { seen = 0; }
    Decision update(const TbePair&) {
        ++seen;
        return Decision{seen == target, std::nullopt, static_cast<double>(seen)};
    }
};

PewmaConfig quick_lower_pewma(double l1, double l2) {
    PewmaConfig cfg;
    cfg.lambda = 1.0;
    cfg.theta0 = {1.0, 1.0};
    cfg.direction = Direction::lower;
    cfg.limits = {l1, l2};
    return cfg;
}

}  // namespace

TEST_CASE("vector completion time is the slower component") {
    CHECK(mtbe::vector_completion_time({1.0, 4.0}) == 4.0);
    CHECK(mtbe::vector_completion_time({3.0, 2.0}) == 3.0);
    CHECK(mtbe::vector_completion_time({2.5, 2.5}) == 2.5);
}

TEST_CASE("vector scenario: first-sample alarms average the mean completion time") {
    // Independent unit exponentials: E[max(Y1, Y2)] = 1.5.
    VectorScenario scen;
    scen.in_control = GumbelBveParams(1.0, 1.0, 1.0);
    AlwaysSignalChart chart;
    Rng rng(314159u);
    const int n = 20000;
    std::vector<double> alarms;
    alarms.reserve(n);
    for (int i = 0; i < n; ++i) {
        const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 10, rng);
        CHECK(r.signaled);
        CHECK(r.sample_index == 1);
        CHECK_FALSE(r.censored);
        alarms.push_back(r.alarm_time);
    }
    // SD of max(Exp(1), Exp(1)) is sqrt(5)/2, so 4 SE ~ 0.032.
    CHECK(std::abs(test_support::mean(alarms) - 1.5) < 0.035);

    // Unequal scales, still independent: E[max] = t1 + t2 - 1/(1/t1 + 1/t2).
    VectorScenario scen2;
    scen2.in_control = GumbelBveParams(1.0, 2.0, 1.0);
    std::vector<double> alarms2;
    alarms2.reserve(n);
    for (int i = 0; i < n; ++i) {
        alarms2.push_back(mtbe::run_vector_scenario(scen2, chart, 10, rng).alarm_time);
    }
    CHECK(std::abs(test_support::mean(alarms2) - (3.0 - 2.0 / 3.0)) < 0.07);
}

TEST_CASE("vector scenario: alarm time is the exact sum of completion times") {
    VectorScenario scen;
    scen.in_control = GumbelBveParams(1.0, 2.0, 0.75);
    SignalAtChart chart;
    chart.target = 5;
    Rng run_rng(42u);
    const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 100, run_rng);
    REQUIRE(r.signaled);
    CHECK(r.sample_index == 5);
    CHECK(std::isnan(r.time_from_change));
    CHECK(std::isnan(r.change_time));

    // Redraw the identical pair stream and accumulate the same way.
    Rng replay_rng(42u);
    double t = 0.0;
    for (int i = 0; i < 5; ++i) {
        t += mtbe::vector_completion_time(mtbe::sample_pair(scen.in_control, replay_rng));
    }
    CHECK(r.alarm_time == t);  // identical accumulation order: bitwise equal
}

TEST_CASE("vector scenario: change accounting around the change sample") {
    VectorScenario scen;
    scen.in_control = GumbelBveParams(1.0, 2.0, 0.5);
    scen.shift = ShiftSpec{0.5, 0.5};
    scen.change_sample = 3;

    SUBCASE("signal after the change reports the exact detection delay") {
        SignalAtChart chart;
        chart.target = 5;
        Rng rng(7u);
        const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 100, rng);
        REQUIRE(r.signaled);
        CHECK(r.sample_index == 5);

        Rng replay(7u);
        double t = 0.0, change_time = 0.0;
        const GumbelBveParams post = scen.shifted();
        for (std::uint64_t i = 1; i <= 5; ++i) {
            const GumbelBveParams& p = i <= 3 ? scen.in_control : post;
            t += mtbe::vector_completion_time(mtbe::sample_pair(p, replay));
            if (i == 3) change_time = t;
        }
        CHECK(r.alarm_time == t);
        CHECK(r.change_time == change_time);
        CHECK(r.time_from_change == t - change_time);
    }

    SUBCASE("signal at the change sample is a burn-in false alarm") {
        SignalAtChart chart;
        chart.target = 3;
        Rng rng(7u);
        const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 100, rng);
        REQUIRE(r.signaled);
        CHECK(r.sample_index == 3);
        CHECK(std::isnan(r.time_from_change));
        CHECK_FALSE(std::isnan(r.change_time));  // the change was reached
    }

    SUBCASE("signal before the change never sees the change time") {
        SignalAtChart chart;
        chart.target = 2;
        Rng rng(7u);
        const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 100, rng);
        REQUIRE(r.signaled);
        CHECK(std::isnan(r.time_from_change));
        CHECK(std::isnan(r.change_time));
    }
}

TEST_CASE("vector scenario: cap censoring and argument validation") {
    VectorScenario scen;
    scen.in_control = GumbelBveParams(1.0, 1.0, 1.0);
    NeverSignalChart chart;
    Rng rng(11u);
    const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 5, rng);
    CHECK_FALSE(r.signaled);
    CHECK(r.censored);
    CHECK(r.sample_index == 5);
    CHECK(r.alarm_time > 0.0);
    CHECK_THROWS_AS(mtbe::run_vector_scenario(scen, chart, 0, rng), std::invalid_argument);
}

TEST_CASE("vector scenario: shifted scales change the sampling model") {
    // Halving both scales halves the mean completion time.
    VectorScenario scen;
    scen.in_control = GumbelBveParams(1.0, 1.0, 1.0);
    scen.shift = ShiftSpec{0.5, 0.5};
    scen.change_sample = 0;  // shift active from the first sample
    AlwaysSignalChart chart;
    Rng rng(13u);
    std::vector<double> alarms;
    for (int i = 0; i < 20000; ++i) {
        alarms.push_back(mtbe::run_vector_scenario(scen, chart, 10, rng).alarm_time);
    }
    CHECK(std::abs(test_support::mean(alarms) - 0.75) < 0.02);
}

TEST_CASE("vector scenario: lambda=1 paired chart obeys the Wald identity") {
    // With lambda = 1 the lower pair signals iff y1 < L1 or y2 < L2, an iid
    // Bernoulli event per sample under independence, so
    // ATS = E[completion] / p with p = 1 - exp(-L1/t1 - L2/t2).
    PewmaConfig cfg;
    cfg.lambda = 1.0;
    cfg.theta0 = {1.0, 2.0};
    cfg.direction = Direction::lower;
    cfg.limits = {0.3, 0.5};
    PairedEwmaChart chart(cfg);

    VectorScenario scen;
    scen.in_control = GumbelBveParams(1.0, 2.0, 1.0);
    Rng rng(2024u);
    const int n = 20000;
    std::vector<double> alarms;
    alarms.reserve(n);
    for (int i = 0; i < n; ++i) {
        const RunOutcome r = mtbe::run_vector_scenario(scen, chart, 1000000, rng);
        REQUIRE(r.signaled);
        alarms.push_back(r.alarm_time);
    }
    const double p = 1.0 - std::exp(-0.3 - 0.25);
    const double expect = (3.0 - 2.0 / 3.0) / p;
    const double se = test_support::std_error(alarms);
    CHECK(std::abs(test_support::mean(alarms) - expect) < 4.0 * se);
}

TEST_CASE("vector scenario: steady-state null delays match the zero-state law") {
    // lambda = 1 makes the signal iid per sample, so conditional on surviving
    // the burn-in the time from the change is distributed exactly like a
    // fresh run's alarm time. Compare the two samples with a KS test.
    PairedEwmaChart chart(quick_lower_pewma(0.0101, 0.0101));
    VectorScenario zero;
    zero.in_control = GumbelBveParams(1.0, 1.0, 1.0);

    VectorScenario steady = zero;
    steady.change_sample = 50;  // null shift: only the bookkeeping moves

    const int n = 10000;
    Rng rng_a(501u), rng_b(777u);
    std::vector<double> zero_state, steady_state;
    zero_state.reserve(n);
    steady_state.reserve(n);
    for (int i = 0; i < n; ++i) {
        const RunOutcome r = mtbe::run_vector_scenario(zero, chart, 1000000, rng_a);
        REQUIRE(r.signaled);
        zero_state.push_back(r.alarm_time);
    }
    while (static_cast<int>(steady_state.size()) < n) {
        const RunOutcome r = mtbe::run_vector_scenario(steady, chart, 1000000, rng_b);
        REQUIRE(r.signaled);
        if (std::isnan(r.time_from_change)) continue;  // burn-in false alarm
        steady_state.push_back(r.time_from_change);
    }
    const double d = test_support::ks_statistic(zero_state, steady_state);
    CHECK(d < test_support::ks_critical_001(n, n));
}

TEST_CASE("point process: single-stream Wald oracle") {
    // Signal iff a gap exceeds h: ATS0 = theta0 * exp(h / theta0).
    ShewhartTbeConfig cfg;
    cfg.streams = {{0.0, 2.0}};
    ShewhartTbeChart chart(cfg);
    PointProcessScenario scen;
    scen.theta0 = {1.0};
    scen.multiplier = {1.0};

    Rng rng(60001u);
    const int n = 20000;
    std::vector<double> alarms;
    alarms.reserve(n);
    for (int i = 0; i < n; ++i) {
        const RunOutcome r = mtbe::run_point_process_scenario(scen, chart, 1e6, rng);
        REQUIRE(r.signaled);
        CHECK(std::isnan(r.change_time));  // never shifts
        alarms.push_back(r.alarm_time);
    }
    const double expect = std::exp(2.0);
    const double se = test_support::std_error(alarms);
    CHECK(std::abs(test_support::mean(alarms) - expect) < 4.0 * se);

    // Two-sided limits: p = exp(-hU) + 1 - exp(-hL).
    ShewhartTbeConfig cfg2;
    cfg2.streams = {{0.1, 3.0}};
    ShewhartTbeChart chart2(cfg2);
    std::vector<double> alarms2;
    alarms2.reserve(n);
    for (int i = 0; i < n; ++i) {
        alarms2.push_back(mtbe::run_point_process_scenario(scen, chart2, 1e6, rng).alarm_time);
    }
    const double p2 = std::exp(-3.0) + 1.0 - std::exp(-0.1);
    const double se2 = test_support::std_error(alarms2);
    CHECK(std::abs(test_support::mean(alarms2) - 1.0 / p2) < 4.0 * se2);
}

TEST_CASE("point process: identical streams split the first alarm evenly") {
    ShewhartTbeConfig cfg;
    cfg.streams = {{0.0, 1.5}, {0.0, 1.5}};
    ShewhartTbeChart chart(cfg);
    PointProcessScenario scen;
    scen.theta0 = {1.0, 1.0};
    scen.multiplier = {1.0, 1.0};

    Rng rng(88u);
    const int n = 20000;
    int from_first = 0;
    for (int i = 0; i < n; ++i) {
        const RunOutcome r = mtbe::run_point_process_scenario(scen, chart, 1e6, rng);
        REQUIRE(r.signaled);
        REQUIRE(r.source.has_value());
        if (*r.source == 0) ++from_first;
    }
    const double frac = double(from_first) / n;
    CHECK(std::abs(frac - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("point process: the straddling interval restarts at the shifted rate") {
    // Sparse in-control stream (mean gap 100), change at t = 10 to mean 1,
    // and a chart that signals on every event. Conditional on no event
    // before the change (probability about 0.9), the alarm is the first
    // post-change completion, which the redraw places at 10 + Exp(1).
    ShewhartTbeConfig cfg;
    cfg.streams = {{1e6, 1e7}};  // every realistic gap falls below 1e6
    ShewhartTbeChart chart(cfg);
    PointProcessScenario scen;
    scen.theta0 = {100.0};
    scen.multiplier = {0.01};
    scen.change_time = 10.0;

    Rng rng(5150u);
    const int n = 4000;
    std::vector<double> delays;
    for (int i = 0; i < n; ++i) {
        const RunOutcome r = mtbe::run_point_process_scenario(scen, chart, 1e6, rng);
        REQUIRE(r.signaled);
        CHECK(r.change_time == 10.0);
        if (r.alarm_time <= 10.0) continue;  // pre-change event fired first
        CHECK(r.sample_index == 1);
        CHECK(r.time_from_change == r.alarm_time - 10.0);
        delays.push_back(r.time_from_change);
    }
    REQUIRE(delays.size() > 3000);
    // Without the redraw the delay would inherit the mean-100 rate.
    CHECK(std::abs(test_support::mean(delays) - 1.0) < 4.0 * test_support::std_error(delays));
}

TEST_CASE("point process: censoring at the time cap") {
    ShewhartTbeConfig cfg;
    cfg.streams = {{0.0, 1e250}};
    ShewhartTbeChart chart(cfg);
    PointProcessScenario scen;
    scen.theta0 = {1.0};
    scen.multiplier = {1.0};
    Rng rng(9u);
    const RunOutcome r = mtbe::run_point_process_scenario(scen, chart, 100.0, rng);
    CHECK_FALSE(r.signaled);
    CHECK(r.censored);
    CHECK(r.alarm_time == 100.0);
}

TEST_CASE("point process: argument validation") {
    ShewhartTbeConfig cfg;
    cfg.streams = {{0.0, 2.0}};
    ShewhartTbeChart chart(cfg);
    Rng rng(1u);

    PointProcessScenario empty;
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(empty, chart, 10.0, rng),
                    std::invalid_argument);

    PointProcessScenario mismatch;
    mismatch.theta0 = {1.0};
    mismatch.multiplier = {1.0, 2.0};
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(mismatch, chart, 10.0, rng),
                    std::invalid_argument);

    PointProcessScenario bad_theta;
    bad_theta.theta0 = {0.0};
    bad_theta.multiplier = {1.0};
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(bad_theta, chart, 10.0, rng),
                    std::invalid_argument);

    PointProcessScenario bad_mult;
    bad_mult.theta0 = {1.0};
    bad_mult.multiplier = {-1.0};
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(bad_mult, chart, 10.0, rng),
                    std::invalid_argument);

    PointProcessScenario bad_change;
    bad_change.theta0 = {1.0};
    bad_change.multiplier = {1.0};
    bad_change.change_time = -1.0;
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(bad_change, chart, 10.0, rng),
                    std::invalid_argument);

    PointProcessScenario ok;
    ok.theta0 = {1.0};
    ok.multiplier = {1.0};
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(ok, chart, 0.0, rng),
                    std::invalid_argument);

    PointProcessScenario two;
    two.theta0 = {1.0, 1.0};
    two.multiplier = {1.0, 1.0};
    CHECK_THROWS_AS(mtbe::run_point_process_scenario(two, chart, 10.0, rng),
                    std::invalid_argument);  // chart has one stream
}

TEST_CASE("event log parsing: happy path with comments and whitespace") {
    std::istringstream in(
        "# header comment\n"
        "\n"
        "0.5, s1\n"
        "  2.25 ,s2  \n"
        "# interleaved comment\n"
        "2.25,s1\n"
        "10,s2\n");
    const auto events = mtbe::parse_event_log(in, {"s1", "s2"});
    REQUIRE(events.size() == 4);
    CHECK(events[0].time == 0.5);
    CHECK(events[0].stream == 0);
    CHECK(events[1].time == 2.25);
    CHECK(events[1].stream == 1);
    CHECK(events[2].time == 2.25);  // equal timestamps are allowed
    CHECK(events[2].stream == 0);
    CHECK(events[3].time == 10.0);
    CHECK(events[3].stream == 1);
}

TEST_CASE("event log parsing: errors carry 1-based line numbers") {
    const std::vector<std::string> names{"s1", "s2"};

    auto expect_error = [&](const std::string& text, std::size_t line) {
        std::istringstream in(text);
        try {
            mtbe::parse_event_log(in, names);
            FAIL_CHECK("expected LogParseError for: " << text);
        } catch (const LogParseError& e) {
            CHECK(e.line == line);
        }
    };

    expect_error("1.0,s1\nno-comma-here\n", 2);
    expect_error("1.0,s1,extra\n", 1);
    expect_error("abc,s1\n", 1);
    expect_error("1.5x,s1\n", 1);
    expect_error("-2.0,s1\n", 1);
    expect_error("inf,s1\n", 1);
    expect_error("1.0,s3\n", 1);
    expect_error("1.0,\n", 1);
    expect_error(",s1\n", 1);
    expect_error("# comment\n\n1.0,s1\n0.5,s2\n", 4);  // time went backwards

    std::istringstream in("1.0,s1\n");
    CHECK_THROWS_AS(mtbe::parse_event_log(in, {}), std::invalid_argument);

    std::istringstream empty("# only comments\n\n");
    CHECK(mtbe::parse_event_log(empty, names).empty());
}

TEST_CASE("replay per stream: gaps are measured from the previous same-stream event") {
    // Stream 0 events at 1, 2, 6 give gaps 1, 1, 4; stream 1 at 3, 9 gives
    // gaps 3, 6. Upper Shewhart limits (3, 5) alarm on the 4 and the 6.
    std::vector<LogEvent> log{{1.0, 0}, {2.0, 0}, {3.0, 1}, {6.0, 0}, {9.0, 1}};
    ShewhartTbeConfig cfg;
    cfg.streams = {{0.0, 3.0}, {0.0, 5.0}};
    const auto alarms = mtbe::replay_event_log(log, MonitorSpec{cfg}, Grouping::per_stream);
    REQUIRE(alarms.size() == 2);
    CHECK(alarms[0].time == 6.0);
    CHECK(alarms[0].index == 3);  // third event on stream 0
    CHECK(alarms[0].statistic == 4.0);
    REQUIRE(alarms[0].source.has_value());
    CHECK(*alarms[0].source == 0);
    CHECK(alarms[1].time == 9.0);
    CHECK(alarms[1].index == 2);
    CHECK(alarms[1].statistic == 6.0);
    CHECK(*alarms[1].source == 1);
}

TEST_CASE("replay per stream: paired ewma runs on per-stream gaps") {
    // lambda = 1 lower chart: z = min(theta0, gap); signal iff gap < limit.
    PewmaConfig cfg;
    cfg.lambda = 1.0;
    cfg.theta0 = {10.0, 10.0};
    cfg.direction = Direction::lower;
    cfg.limits = {2.0, 2.0};
    std::vector<LogEvent> log{{5.0, 0}, {6.0, 0}, {7.0, 1}};
    const auto alarms = mtbe::replay_event_log(log, MonitorSpec{cfg}, Grouping::per_stream);
    REQUIRE(alarms.size() == 1);
    CHECK(alarms[0].time == 6.0);  // gap 1 < 2 on stream 0
    CHECK(alarms[0].index == 2);
    CHECK(*alarms[0].source == 0);
}

TEST_CASE("replay vector assembly: windows close at the later arrival") {
    // First vector pairs events at 1 and 4 into (1, 4); the next window
    // starts at 4, so events at 5 and 6 become (1, 2).
    std::vector<LogEvent> log{{1.0, 0}, {4.0, 1}, {5.0, 0}, {6.0, 1}};
    PewmaConfig cfg;
    cfg.lambda = 1.0;
    cfg.theta0 = {2.0, 2.0};
    cfg.direction = Direction::upper;
    cfg.limits = {3.5, 3.5};
    const auto alarms = mtbe::replay_event_log(log, MonitorSpec{cfg}, Grouping::vector_assembly);
    REQUIRE(alarms.size() == 1);  // only y2 = 4 crosses 3.5
    CHECK(alarms[0].time == 4.0);
    CHECK(alarms[0].index == 1);
    CHECK(*alarms[0].source == 1);
    CHECK(alarms[0].statistic == 4.0);
}

TEST_CASE("replay vector assembly: queued events contribute zero delay") {
    // Stream 0 fires twice before stream 1 catches up: the second vector's
    // first component was already waiting when its window opened.
    std::vector<LogEvent> log{{1.0, 0}, {2.0, 0}, {4.0, 1}, {4.5, 1}};
    PewmaConfig cfg;
    cfg.lambda = 1.0;
    cfg.theta0 = {1.0, 1.0};
    cfg.direction = Direction::lower;
    cfg.limits = {0.05, 0.05};
    const auto alarms = mtbe::replay_event_log(log, MonitorSpec{cfg}, Grouping::vector_assembly);
    // Vector 1 is (1, 4): no alarm. Vector 2 is (max(0, 2-4), 4.5-4) = (0, 0.5):
    // stream 0 signals with statistic 0 at the completion time 4.5.
    REQUIRE(alarms.size() == 1);
    CHECK(alarms[0].time == 4.5);
    CHECK(alarms[0].index == 2);
    CHECK(*alarms[0].source == 0);
    CHECK(alarms[0].statistic == 0.0);
}

TEST_CASE("replay vector assembly: reconstructs consecutively observed vectors exactly") {
    // Build an event log from known dyadic vectors laid end to end; the
    // replay must feed the chart the identical vectors, so its alarms match
    // a direct feed of the same chart bit for bit.
    const double menu[] = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
    Rng rng(321u);
    std::vector<TbePair> vectors;
    std::vector<LogEvent> log;
    double start = 0.0;
    for (int i = 0; i < 200; ++i) {
        const TbePair y{menu[static_cast<int>(rng.uniform_open01() * 9)],
                        menu[static_cast<int>(rng.uniform_open01() * 9)]};
        vectors.push_back(y);
        const double t1 = start + y.y1;
        const double t2 = start + y.y2;
        if (t1 <= t2) {
            log.push_back({t1, 0});
            log.push_back({t2, 1});
        } else {
            log.push_back({t2, 1});
            log.push_back({t1, 0});
        }
        start = std::max(t1, t2);
    }

    MewmaConfig cfg;
    cfg.lambda = 0.25;
    cfg.mean = {1.0, 1.0};
    cfg.covariance = Sym2{1.0, 0.0, 1.0};
    cfg.limit_h = 5.0;

    const auto alarms = mtbe::replay_event_log(log, MonitorSpec{cfg}, Grouping::vector_assembly);

    MewmaChart direct(cfg);
    std::vector<AlarmRecord> expected;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const Decision d = direct.update(vectors[i]);
        if (d.signaled) {
            expected.push_back(AlarmRecord{0.0, i + 1, d.source, d.statistic});
        }
    }
    REQUIRE(!alarms.empty());
    REQUIRE(alarms.size() == expected.size());
    for (std::size_t k = 0; k < alarms.size(); ++k) {
        CHECK(alarms[k].index == expected[k].index);
        CHECK(alarms[k].statistic == expected[k].statistic);
    }
}

TEST_CASE("replay grouping rejects mismatched chart types") {
    MewmaConfig mewma;
    mewma.lambda = 0.5;
    mewma.mean = {1.0, 1.0};
    mewma.covariance = Sym2{1.0, 0.0, 1.0};
    mewma.limit_h = 10.0;
    ShewhartTbeConfig shewhart;
    shewhart.streams = {{0.0, 5.0}, {0.0, 5.0}};

    std::vector<LogEvent> log{{1.0, 0}, {2.0, 1}};
    CHECK_THROWS_AS(mtbe::replay_event_log(log, MonitorSpec{mewma}, Grouping::per_stream),
                    std::invalid_argument);
    CHECK_THROWS_AS(mtbe::replay_event_log(log, MonitorSpec{shewhart}, Grouping::vector_assembly),
                    std::invalid_argument);

    std::vector<LogEvent> bad{{1.0, 5}};
    CHECK_THROWS_AS(mtbe::replay_event_log(bad, MonitorSpec{shewhart}, Grouping::per_stream),
                    std::out_of_range);
    CHECK_THROWS_AS(mtbe::replay_event_log(bad, MonitorSpec{mewma}, Grouping::vector_assembly),
                    std::out_of_range);
}
