#include "idnc/sim.hpp"

#include "doctest.h"
#include "idnc/rng.hpp"

#include <cmath>
#include <numeric>

using namespace idnc;

namespace {

SimConfig small_config() {
    SimConfig config;
    config.receivers = 4;
    config.frame_size = 4;
    config.mean_erasure = 0.3;
    config.mean_demand = 1.0;
    config.policy = PolicyKind::parse("mwvs:n=3");
    config.trials = 50;
    config.master_seed = 2024;
    return config;
}

} // namespace

TEST_CASE("config validation") {
    auto config = small_config();
    CHECK_NOTHROW(config.validate());
    config.mean_erasure = 1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_config();
    config.mean_demand = 0.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_config();
    config.trials = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_config();
    CHECK(config.effective_max_slots() ==
          static_cast<long>(std::ceil(50.0 * 4 / 0.7)));
    config.max_slots = 17;
    CHECK(config.effective_max_slots() == 17);
}

TEST_CASE("profile draws hit the requested means and bounds") {
    auto rng = make_stream(51, 0, 0);
    const int m = 40;
    const auto profiles = draw_profiles(m, 10, 0.2, 0.6, 0.5, 0.5, rng);
    double p_sum = 0.0;
    for (const auto& profile : profiles) {
        CHECK(profile.erasure_prob >= 0.01);
        CHECK(profile.erasure_prob <= 0.99);
        // recentering may nudge a draw slightly past the spread window
        CHECK(profile.erasure_prob >= 0.2 * 0.5 - 0.02);
        CHECK(profile.erasure_prob <= 0.2 * 1.5 + 0.02);
        CHECK(profile.demand_ratio > 0.0);
        CHECK(profile.demand_ratio <= 1.0);
        CHECK_FALSE(profile.primary_packets.empty());
        p_sum += profile.erasure_prob;
    }
    CHECK(p_sum / m == doctest::Approx(0.2).epsilon(1e-6));

    // broadcast: every receiver demands the full frame
    const auto broadcast = draw_profiles(5, 6, 0.2, 1.0, 0.5, 0.5, rng);
    for (const auto& profile : broadcast) CHECK(profile.primary_packets.size() == 6);
}

TEST_CASE("trials are reproducible and decode-consistent") {
    const auto config = small_config();
    const auto first = run_trial(config, 3);
    const auto second = run_trial(config, 3);
    CHECK(first.completion_delay == second.completion_delay);
    REQUIRE(first.transcript.size() == second.transcript.size());
    for (size_t s = 0; s < first.transcript.size(); ++s) {
        CHECK(first.transcript[s].packets == second.transcript[s].packets);
        CHECK(first.transcript[s].outcomes == second.transcript[s].outcomes);
    }
}

TEST_CASE("single receiver single packet is geometric after a failed init") {
    SimConfig config;
    config.receivers = 1;
    config.frame_size = 1;
    config.mean_erasure = 0.5;
    config.spread_erasure = 0.0;
    config.policy = PolicyKind::parse("mwcs:n=1");
    config.trials = 40000;
    config.master_seed = 9;
    // P(init fails) = 1/2, then geometric mean 2: overall mean delay 1
    const auto summary = run_experiment(config);
    CHECK(summary.mean_delay == doctest::Approx(1.0).epsilon(0.05));
    CHECK(summary.truncated == 0);

    config.include_initial = true;
    const auto shifted = run_experiment(config);
    CHECK(shifted.mean_delay == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("single trial yields zero standard error") {
    auto config = small_config();
    config.trials = 1;
    const auto summary = run_experiment(config);
    CHECK(summary.trials == 1);
    CHECK(summary.stderr_ == 0.0);
}

TEST_CASE("thread count never changes the aggregate") {
    auto config = small_config();
    config.trials = 40;
    config.threads = 1;
    const auto serial = run_experiment(config);
    config.threads = 3;
    const auto parallel = run_experiment(config);
    CHECK(serial.mean_delay == parallel.mean_delay);
    CHECK(serial.stderr_ == parallel.stderr_);
    CHECK(serial.truncated == parallel.truncated);
}

TEST_CASE("truncated trials are reported and excluded") {
    auto config = small_config();
    config.mean_erasure = 0.6;
    config.max_slots = 1;
    config.trials = 60;
    const auto summary = run_experiment(config);
    CHECK(summary.truncated > 0);
    CHECK(summary.trials + summary.truncated == 60);
    // surviving trials completed within the slot cap
    CHECK(summary.mean_delay <= 1.0);
}

TEST_CASE("rnc policy runs through the experiment harness") {
    SimConfig config;
    config.receivers = 3;
    config.frame_size = 3;
    config.mean_erasure = 0.4;
    config.policy = PolicyKind::parse("rnc");
    config.trials = 500;
    config.master_seed = 5;
    const auto summary = run_experiment(config);
    CHECK(summary.mean_delay > 0.0);
    CHECK(summary.truncated == 0);
}

TEST_CASE("sweeps share cell seeds across policies") {
    auto base = small_config();
    base.trials = 30;
    const auto rows = run_sweep(base, SweepAxis::P, {0.2, 0.4},
                                {PolicyKind::parse("mwvs:n=3"), PolicyKind::parse("rnd")});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].seed == rows[1].seed);
    CHECK(rows[2].seed == rows[3].seed);
    CHECK(rows[0].seed != rows[2].seed);
    CHECK(rows[0].axis == "p");
    CHECK(rows[0].policy == "mwvs:n=3");

    // rerun determinism
    const auto again = run_sweep(base, SweepAxis::P, {0.2, 0.4},
                                 {PolicyKind::parse("mwvs:n=3"), PolicyKind::parse("rnd")});
    for (size_t r = 0; r < rows.size(); ++r) {
        CHECK(rows[r].mean_delay == again[r].mean_delay);
        CHECK(rows[r].stderr_ == again[r].stderr_);
    }
}

TEST_CASE("axis names round-trip") {
    for (const char* name : {"mu", "M", "N", "p"}) CHECK(axis_name(parse_axis(name)) == name);
    CHECK_THROWS_AS(parse_axis("Q"), std::invalid_argument);
}

TEST_CASE("higher erasure rates cost more slots") {
    auto base = small_config();
    base.trials = 300;
    base.receivers = 6;
    base.frame_size = 6;
    const auto rows =
        run_sweep(base, SweepAxis::P, {0.05, 0.45}, {PolicyKind::parse("mwvs:n=3")});
    CHECK(rows[0].mean_delay < rows[1].mean_delay);
}
