#pragma once

#include "idnc/model.hpp"
#include "idnc/policies.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace idnc {

struct SimConfig {
    int receivers = 0;            // M
    int frame_size = 0;           // N
    double mean_erasure = 0.15;   // p-bar
    double mean_demand = 1.0;     // mu-bar; 1 => broadcast
    PolicyKind policy;
    long trials = 1;
    std::uint64_t master_seed = 1;
    double spread_erasure = 0.5;  // p_i uniform on [(1-s)p, (1+s)p]
    double spread_demand = 0.5;
    long max_slots = 0;           // 0 => 50*N/(1-p) default
    bool include_initial = false;
    SecondaryWeight secondary_weight = SecondaryWeight::PsiTilde;
    int threads = 1;

    long effective_max_slots() const;
    void validate() const;
};

struct SlotRecord {
    std::vector<int> packets;
    std::vector<ReceptionTarget> targets;
    std::vector<bool> outcomes;
};

struct CompletionRecord {
    long completion_delay = 0;
    bool truncated = false;
    std::vector<SlotRecord> transcript;
};

struct ExperimentSummary {
    double mean_delay = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
    long truncated = 0;
};

// Per-frame receiver draw: p_i and mu_i uniform around the means, clipped,
// then recentered so the sample mean hits the target exactly when no clip
// re-triggers (at most 3 passes).
std::vector<ReceiverProfile> draw_profiles(int receivers, int frame_size, double mean_erasure,
                                           double mean_demand, double spread_erasure,
                                           double spread_demand, std::mt19937_64& rng);

CompletionRecord run_trial(const SimConfig& config, long trial_index);

ExperimentSummary run_experiment(const SimConfig& config);

enum class SweepAxis { Mu, M, N, P };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

struct ResultRow {
    std::string axis;
    double axis_value = 0.0;
    std::string policy;
    double mean_delay = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
    long truncated = 0;
    std::uint64_t seed = 0;
};

// Cross product of axis values and policies. Every policy in one cell shares
// the cell seed, so profile and init-phase draws are identical across
// policies (common random numbers); reception outcomes are policy-specific.
std::vector<ResultRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                 const std::vector<double>& values,
                                 const std::vector<PolicyKind>& policies);

} // namespace idnc
