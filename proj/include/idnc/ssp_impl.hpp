#pragma once

#include "idnc/rng.hpp"

#include <algorithm>
#include <cmath>

namespace idnc {

template <typename PolicyFn>
double simulate_policy_mean(const FrameState& initial, PolicyFn&& policy, long trials,
                            std::mt19937_64& rng, double* stderr_out) {
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        FrameState state = initial;
        long slots = 0;
        while (!is_complete(state)) {
            const IdncGraph graph = build_graph(state);
            const Clique clique = policy(state, graph);
            std::vector<ReceptionTarget> targets;
            std::vector<bool> outcomes;
            for (const auto& target : clique_targets(graph, clique)) {
                targets.push_back(target);
                outcomes.push_back(bernoulli(rng, state.profiles[target.receiver].success_prob));
            }
            state = apply_reception(state, targets, outcomes);
            ++slots;
        }
        sum += static_cast<double>(slots);
        sum_sq += static_cast<double>(slots) * slots;
    }
    const double mean = sum / trials;
    if (stderr_out) {
        *stderr_out = trials > 1
                          ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1)) /
                                      trials)
                          : 0.0;
    }
    return mean;
}

template <typename PolicyFn>
PolicyGap policy_gap(const std::vector<FrameState>& instances, PolicyFn&& policy, long trials,
                     std::mt19937_64& rng, const SolveOptions& options) {
    PolicyGap stats;
    double sum_rel = 0.0;
    for (const auto& instance : instances) {
        const ValueTable table = solve(instance, options);
        double stderr_val = 0.0;
        const double mean = simulate_policy_mean(instance, policy, trials, rng, &stderr_val);
        const double optimal = table.initial_value();
        const double gap = mean - optimal;
        const double rel = optimal > 0.0 ? gap / optimal : 0.0;
        stats.per_instance_gap.push_back(gap);
        stats.per_instance_stderr.push_back(stderr_val);
        stats.mean_abs_gap += gap / instances.size();
        stats.max_relative_gap = std::max(stats.max_relative_gap, rel);
        sum_rel += rel;
    }
    stats.mean_relative_gap = instances.empty() ? 0.0 : sum_rel / instances.size();
    return stats;
}

} // namespace idnc
