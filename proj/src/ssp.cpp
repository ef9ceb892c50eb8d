#include "idnc/ssp.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace idnc {

namespace {

std::vector<ReceptionTarget> collect_lacking_pairs(const FrameState& initial) {
    std::vector<ReceptionTarget> pairs;
    for (int i = 0; i < initial.receiver_count(); ++i)
        for (int j = 0; j < initial.packet_count(); ++j)
            if (initial.sfm.at(i, j) != 0) pairs.push_back({i, j});
    return pairs;
}

int bit_of(const std::vector<ReceptionTarget>& pairs, int receiver, int packet) {
    for (int b = 0; b < static_cast<int>(pairs.size()); ++b)
        if (pairs[b].receiver == receiver && pairs[b].packet == packet) return b;
    throw std::logic_error("clique targets a pair outside the lacking set");
}

// Every nonempty clique of the graph, for the non-maximal action-space check.
std::vector<Clique> enumerate_all_cliques(const IdncGraph& graph) {
    const int count = graph.vertex_count();
    if (count > 20) throw std::length_error("all-clique enumeration bound exceeded");
    std::vector<Clique> cliques;
    for (std::uint32_t subset = 1; subset < (1u << count); ++subset) {
        std::vector<int> ids;
        bool ok = true;
        for (int v = 0; v < count && ok; ++v) {
            if (!(subset >> v & 1)) continue;
            for (int u : ids)
                if (!graph.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (ok) ids.push_back(v);
        }
        if (ok) cliques.push_back(make_clique(graph, std::move(ids)));
    }
    return cliques;
}

} // namespace

bool ValueTable::absorbing(SspMask mask) const {
    for (int b = 0; b < bit_count(); ++b) {
        const auto& pair = lacking_pairs[b];
        if (initial.sfm.at(pair.receiver, pair.packet) == 1 && !(mask >> b & 1)) return false;
    }
    return true;
}

FrameState ValueTable::materialize(SspMask mask) const {
    FrameState state = initial;
    for (int b = 0; b < bit_count(); ++b) {
        if (!(mask >> b & 1)) continue;
        const auto& pair = lacking_pairs[b];
        if (state.sfm.at(pair.receiver, pair.packet) == 1) --state.wants_sizes[pair.receiver];
        state.sfm.set(pair.receiver, pair.packet, 0);
        ++state.has_sizes[pair.receiver];
        --state.lacks_sizes[pair.receiver];
    }
    return state;
}

std::vector<Transition> transition_distribution(const FrameState& initial,
                                                const std::vector<ReceptionTarget>& lacking_pairs,
                                                SspMask state, const Clique& clique,
                                                const IdncGraph& graph) {
    if (clique.empty()) throw std::invalid_argument("empty clique has no transition");
    struct Target {
        int bit;
        double q;
    };
    std::vector<Target> targets;
    for (int v : clique.vertices) {
        const auto& vert = graph.vertex(v);
        targets.push_back({bit_of(lacking_pairs, vert.receiver, vert.packet),
                           initial.profiles[vert.receiver].success_prob});
    }
    std::vector<Transition> transitions;
    const int t = static_cast<int>(targets.size());
    transitions.reserve(1u << t);
    for (std::uint32_t subset = 0; subset < (1u << t); ++subset) {
        Transition tr;
        tr.successor = state;
        tr.probability = 1.0;
        for (int k = 0; k < t; ++k) {
            if (subset >> k & 1) {
                tr.probability *= targets[k].q;
                tr.successor |= SspMask{1} << targets[k].bit;
            } else {
                tr.probability *= 1.0 - targets[k].q;
            }
        }
        transitions.push_back(tr);
    }
    return transitions;
}

ValueTable solve(const FrameState& initial, const SolveOptions& options) {
    ValueTable table;
    table.initial = initial;
    table.lacking_pairs = collect_lacking_pairs(initial);
    const int bits = table.bit_count();
    if (bits > options.size_bound)
        throw std::length_error("instance exceeds the SSP size bound of " +
                                std::to_string(options.size_bound) + " lacking bits (" +
                                std::to_string(bits) + ")");
    for (const auto& pair : table.lacking_pairs)
        if (initial.profiles[pair.receiver].success_prob <= 0.0)
            throw std::invalid_argument("SSP requires q > 0 for every lacking receiver");

    const std::size_t states = std::size_t{1} << bits;
    table.value.assign(states, 0.0);
    table.optimal_action.resize(states);

    std::vector<SspMask> order(states);
    for (std::size_t mask = 0; mask < states; ++mask) order[mask] = static_cast<SspMask>(mask);
    std::sort(order.begin(), order.end(), [](SspMask a, SspMask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });

    for (SspMask mask : order) {
        if (table.absorbing(mask)) continue;
        const FrameState state = table.materialize(mask);
        const IdncGraph graph = build_graph(state);
        const auto actions = options.include_non_maximal
                                 ? enumerate_all_cliques(graph)
                                 : enumerate_maximal_cliques(graph, options.clique_bound);
        assert(!actions.empty()); // every wanted packet induces a singleton clique

        double best_value = 0.0;
        const Clique* best_action = nullptr;
        for (const auto& clique : actions) {
            double self_prob = 0.0;
            double expectation = 0.0;
            for (const auto& tr :
                 transition_distribution(initial, table.lacking_pairs, mask, clique, graph)) {
                if (tr.successor == mask)
                    self_prob += tr.probability;
                else
                    expectation += tr.probability * table.value[tr.successor];
            }
            const double value = (1.0 + expectation) / (1.0 - self_prob);
            if (!best_action || value < best_value) {
                best_value = value;
                best_action = &clique;
            }
        }
        table.value[mask] = best_value;
        table.optimal_action[mask] = clique_targets(graph, *best_action);
    }
    return table;
}

double simulate_optimal_policy(const ValueTable& table, long trials, std::mt19937_64& rng,
                               double* stderr_out) {
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        SspMask mask = 0;
        long slots = 0;
        while (!table.absorbing(mask)) {
            for (const auto& target : table.optimal_action[mask]) {
                if (bernoulli(rng, table.initial.profiles[target.receiver].success_prob)) {
                    const int b = bit_of(table.lacking_pairs, target.receiver, target.packet);
                    mask |= SspMask{1} << b;
                }
            }
            ++slots;
        }
        sum += static_cast<double>(slots);
        sum_sq += static_cast<double>(slots) * slots;
    }
    const double mean = sum / trials;
    if (stderr_out)
        *stderr_out = trials > 1
                          ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1)) /
                                      trials)
                          : 0.0;
    return mean;
}

} // namespace idnc
