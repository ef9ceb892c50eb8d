#include "idnc/ssp.hpp"

#include "doctest.h"
#include "idnc/policies.hpp"
#include "idnc/rng.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace idnc;

namespace {

FrameState state_from(const std::vector<std::string>& rows, std::vector<double> q) {
    return frame_from_sfm(oracles::sfm_from_rows(rows), std::move(q));
}

} // namespace

TEST_CASE("hand-solved instances") {
    // one receiver, one wanted packet, q = 1/2: geometric with mean 2
    CHECK(solve(state_from({"w"}, {0.5})).initial_value() == doctest::Approx(2.0));

    // the XOR pair with perfect channels resolves in one slot
    CHECK(solve(state_from({"ow", "wo"}, {1.0, 1.0})).initial_value() == doctest::Approx(1.0));

    // two receivers sharing one wanted packet, q = 1/2 each:
    // E[max of two geometrics] = 2 + 2 - 4/3 = 8/3
    CHECK(solve(state_from({"w", "w"}, {0.5, 0.5})).initial_value() ==
          doctest::Approx(8.0 / 3.0));

    // nothing wanted: value zero, no action
    const auto done = solve(state_from({"ox", "xo"}, {0.5, 0.5}));
    CHECK(done.initial_value() == doctest::Approx(0.0));
    CHECK(done.optimal_action[0].empty());
}

TEST_CASE("transition distributions are proper") {
    auto rng = make_stream(41, 0, 0);
    for (int round = 0; round < 25; ++round) {
        const auto initial = oracles::random_frame(rng, 3, 3, 9);
        const auto table = solve(initial);
        const auto graph = build_graph(initial);
        if (graph.vertex_count() == 0) continue;
        for (const auto& clique : enumerate_maximal_cliques(graph)) {
            const auto transitions =
                transition_distribution(initial, table.lacking_pairs, 0, clique, graph);
            double total = 0.0;
            double self_loop = -1.0;
            for (const auto& tr : transitions) {
                total += tr.probability;
                if (tr.successor == 0) self_loop = tr.probability;
            }
            CHECK(total == doctest::Approx(1.0));
            double all_erased = 1.0;
            for (int v : clique.vertices)
                all_erased *= initial.profiles[graph.vertex(v).receiver].erasure_prob;
            CHECK(self_loop == doctest::Approx(all_erased));
        }
    }
}

TEST_CASE("values respect the weighted-wants bounds on every state") {
    auto rng = make_stream(42, 0, 0);
    for (int round = 0; round < 25; ++round) {
        const auto initial = oracles::random_frame(rng, 3, 3, 9);
        const auto table = solve(initial);
        for (SspMask mask = 0; mask < (SspMask{1} << table.bit_count()); ++mask) {
            const auto state = table.materialize(mask);
            double max_ww = 0.0, sum_ww = 0.0;
            for (double w : weighted_wants(state)) {
                max_ww = std::max(max_ww, w);
                sum_ww += w;
            }
            CHECK(table.value[mask] >= max_ww - 1e-9);
            CHECK(table.value[mask] <= sum_ww + 1e-9);
        }
    }
}

TEST_CASE("extra side information never hurts") {
    auto rng = make_stream(43, 0, 0);
    for (int round = 0; round < 20; ++round) {
        const auto initial = oracles::random_frame(rng, 3, 3, 8);
        const auto table = solve(initial);
        const int bits = table.bit_count();
        for (SspMask mask = 0; mask < (SspMask{1} << bits); ++mask)
            for (int b = 0; b < bits; ++b)
                if (!(mask >> b & 1))
                    CHECK(table.value[mask | (SspMask{1} << b)] <= table.value[mask] + 1e-9);
    }
}

TEST_CASE("widening the action space to non-maximal cliques changes nothing") {
    auto rng = make_stream(44, 0, 0);
    for (int round = 0; round < 15; ++round) {
        const auto initial = oracles::random_frame(rng, 3, 3, 8);
        const auto maximal = solve(initial);
        SolveOptions options;
        options.include_non_maximal = true;
        const auto widened = solve(initial, options);
        for (SspMask mask = 0; mask < (SspMask{1} << maximal.bit_count()); ++mask)
            CHECK(maximal.value[mask] == doctest::Approx(widened.value[mask]).epsilon(1e-10));
    }
}

TEST_CASE("optimal-policy replay reproduces the solved value") {
    auto rng = make_stream(45, 0, 0);
    for (int round = 0; round < 5; ++round) {
        const auto initial = oracles::random_frame(rng, 3, 3, 8);
        const auto table = solve(initial);
        if (table.initial_value() == 0.0) continue;
        double stderr_ = 0.0;
        const double replayed = simulate_optimal_policy(table, 20000, rng, &stderr_);
        CHECK(std::abs(replayed - table.initial_value()) < 3.5 * stderr_ + 1e-6);
    }
}

TEST_CASE("greedy policies are near-optimal on tiny instances") {
    auto rng = make_stream(46, 0, 0);
    std::vector<FrameState> instances;
    while (instances.size() < 8) {
        auto candidate = oracles::random_frame(rng, 3, 3, 8);
        if (solve(candidate).initial_value() > 0.0) instances.push_back(std::move(candidate));
    }
    auto mwcs = [](const FrameState& state, const IdncGraph& graph) {
        return select_mwcs(graph, weighted_wants(state), 3);
    };
    const auto gap = policy_gap(instances, mwcs, 20000, rng);
    CHECK(gap.per_instance_gap.size() == instances.size());
    // MWCS is exact surprisingly often at this scale; allow modest slack
    CHECK(gap.mean_relative_gap < 0.15);
    for (size_t i = 0; i < instances.size(); ++i)
        CHECK(gap.per_instance_gap[i] > -3.5 * gap.per_instance_stderr[i] - 1e-6);
}

TEST_CASE("instances beyond the size bound are rejected with the bit count") {
    auto rng = make_stream(47, 0, 0);
    std::vector<ReceiverProfile> profiles{forced_loss_profile({0, 1, 2, 3, 4})};
    auto state = init_frame(profiles, 5, rng);
    state.profiles[0].forced_loss = false;
    state.profiles[0].erasure_prob = 0.5;
    state.profiles[0].success_prob = 0.5;
    SolveOptions options;
    options.size_bound = 4;
    CHECK_THROWS_WITH_AS(solve(state, options),
                         doctest::Contains("5"), std::length_error);
}
