#pragma once

#include "idnc/graph.hpp"
#include "idnc/model.hpp"

#include <random>
#include <string>
#include <vector>

namespace idnc {

enum class PolicyVariant {
    Random,
    MaxClique,
    MaxCliqueHeuristic,
    MaxWeightClique,
    MaxWeightVertexSearch,
    PerfectRnc,
};

enum class SecondaryWeight { PsiTilde, QPsi };

struct PolicyKind {
    PolicyVariant variant = PolicyVariant::Random;
    int norm = 1; // L_n exponent for the weighted policies

    // Parses "rnd", "mc", "mc-heur", "mwcs:n=<k>", "mwvs:n=<k>", "rnc".
    static PolicyKind parse(const std::string& flag);
    std::string name() const;
};

struct CliqueSearchBudget {
    int max_vertices = 200;
    long max_nodes = 10'000'000;
};

// Exact maximum-weight clique over the candidate set (branch and bound with
// a greedy-coloring bound). Ties: larger weight, larger cardinality, then
// lexicographically smallest vertex list.
std::vector<int> max_weight_clique(const IdncGraph& graph, const Bits& candidates,
                                   const std::vector<double>& weights,
                                   const CliqueSearchBudget& budget = {});

Clique select_random(const IdncGraph& graph, std::mt19937_64& rng);
Clique select_max_clique(const IdncGraph& graph, const CliqueSearchBudget& budget = {});

// MWCS/MWVS weight secondary vertices by (psi_i/q_i)^n; the experimental
// SecondaryWeight::QPsi mode switches the secondary stage to (q_i*psi_i)^n,
// which needs the per-receiver success probabilities.
Clique select_mwcs(const IdncGraph& graph, const std::vector<double>& weighted_wants, int norm,
                   SecondaryWeight secondary = SecondaryWeight::PsiTilde,
                   const std::vector<double>& success_probs = {},
                   const CliqueSearchBudget& budget = {});
Clique select_mwvs(const IdncGraph& graph, const std::vector<double>& weighted_wants, int norm,
                   SecondaryWeight secondary = SecondaryWeight::PsiTilde,
                   const std::vector<double>& success_probs = {});
Clique select_mc_heuristic(const IdncGraph& graph);

// Perfect-RNC broadcast baseline: receiver i completes after lacks_size_i
// successful receptions; returns the completion slot of the slowest receiver.
long rnc_completion_delay(const FrameState& state, std::mt19937_64& rng);

// Dispatch used by the simulator for the graph-based policies.
Clique select_clique(PolicyKind policy, const IdncGraph& graph,
                     const std::vector<double>& weighted_wants, std::mt19937_64& rng,
                     SecondaryWeight secondary = SecondaryWeight::PsiTilde,
                     const std::vector<double>& success_probs = {});

} // namespace idnc
