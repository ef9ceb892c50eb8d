#pragma once

#include "idnc/graph.hpp"
#include "idnc/model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace idnc {

// A recovery-phase state: bit b set means the b-th initially-lacking
// (receiver, packet) pair has moved to Has since recovery began.
using SspMask = std::uint32_t;

struct Transition {
    SspMask successor = 0;
    double probability = 0.0;
};

// Transition distribution of one clique: one entry per subset of targeted
// receivers (the subset that received), self-transition included.
std::vector<Transition> transition_distribution(const FrameState& initial,
                                                const std::vector<ReceptionTarget>& lacking_pairs,
                                                SspMask state, const Clique& clique,
                                                const IdncGraph& graph);

struct ValueTable {
    FrameState initial;
    std::vector<ReceptionTarget> lacking_pairs; // bit order
    std::vector<double> value;                  // indexed by mask
    std::vector<std::vector<ReceptionTarget>> optimal_action; // targets of pi*(s)

    int bit_count() const { return static_cast<int>(lacking_pairs.size()); }
    bool absorbing(SspMask mask) const;
    FrameState materialize(SspMask mask) const;
    double initial_value() const { return value[0]; }
};

struct SolveOptions {
    int size_bound = 16;      // max initially-lacking bits
    int clique_bound = 24;    // forwarded to enumerate_maximal_cliques
    bool include_non_maximal = false; // test hook for the action-space question
};

// Exact expected residual completion delay for every mask state, by dynamic
// programming in decreasing order of unset bits (valid since only singleton
// cycles exist).
ValueTable solve(const FrameState& initial, const SolveOptions& options = {});

struct PolicyGap {
    double mean_relative_gap = 0.0;
    double max_relative_gap = 0.0;
    double mean_abs_gap = 0.0;
    std::vector<double> per_instance_gap;
    std::vector<double> per_instance_stderr;
};

// Monte Carlo mean completion delay of `policy`; `policy` maps a
// (FrameState, IdncGraph) pair to a Clique of that graph.
template <typename PolicyFn>
double simulate_policy_mean(const FrameState& initial, PolicyFn&& policy, long trials,
                            std::mt19937_64& rng, double* stderr_out = nullptr);

// Replays the table's optimal policy through the stochastic channel.
double simulate_optimal_policy(const ValueTable& table, long trials, std::mt19937_64& rng,
                               double* stderr_out = nullptr);

// Monte Carlo mean delay of `policy` minus V(initial) on each instance.
template <typename PolicyFn>
PolicyGap policy_gap(const std::vector<FrameState>& instances, PolicyFn&& policy, long trials,
                     std::mt19937_64& rng, const SolveOptions& options = {});

} // namespace idnc

#include "idnc/ssp_impl.hpp"
