#include "idnc/sim.hpp"

#include "idnc/graph.hpp"
#include "idnc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

namespace idnc {

long SimConfig::effective_max_slots() const {
    if (max_slots > 0) return max_slots;
    return static_cast<long>(std::ceil(50.0 * frame_size / (1.0 - mean_erasure)));
}

void SimConfig::validate() const {
    if (receivers < 1) throw std::invalid_argument("receivers must be >= 1");
    if (frame_size < 1) throw std::invalid_argument("frame size must be >= 1");
    if (!(mean_erasure > 0.0 && mean_erasure < 1.0))
        throw std::invalid_argument("mean erasure probability must lie in (0, 1)");
    if (!(mean_demand > 0.0 && mean_demand <= 1.0))
        throw std::invalid_argument("mean demand ratio must lie in (0, 1]");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (spread_erasure < 0.0 || spread_erasure > 1.0 || spread_demand < 0.0 ||
        spread_demand > 1.0)
        throw std::invalid_argument("spread factors must lie in [0, 1]");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

namespace {

// Uniform draw around `mean`, clipped to [lo, hi], recentered affinely so the
// sample mean matches `mean`; at most three clip passes.
std::vector<double> draw_recentered(int count, double mean, double spread, double lo, double hi,
                                    std::mt19937_64& rng) {
    std::vector<double> values(count);
    std::uniform_real_distribution<double> dist((1.0 - spread) * mean, (1.0 + spread) * mean);
    for (auto& v : values) v = std::clamp(dist(rng), lo, hi);
    for (int pass = 0; pass < 3; ++pass) {
        const double sample_mean =
            std::accumulate(values.begin(), values.end(), 0.0) / count;
        const double shift = mean - sample_mean;
        if (std::abs(shift) < 1e-15) break;
        bool clipped = false;
        for (auto& v : values) {
            v += shift;
            if (v < lo || v > hi) {
                v = std::clamp(v, lo, hi);
                clipped = true;
            }
        }
        if (!clipped) break;
    }
    return values;
}

} // namespace

std::vector<ReceiverProfile> draw_profiles(int receivers, int frame_size, double mean_erasure,
                                           double mean_demand, double spread_erasure,
                                           double spread_demand, std::mt19937_64& rng) {
    if (!(mean_erasure > 0.0 && mean_erasure < 1.0))
        throw std::invalid_argument("mean erasure probability must lie in (0, 1)");
    const auto erasures =
        draw_recentered(receivers, mean_erasure, spread_erasure, 0.01, 0.99, rng);
    std::vector<double> demands(receivers, 1.0);
    if (mean_demand < 1.0)
        demands = draw_recentered(receivers, mean_demand, spread_demand, 0.01, 1.0, rng);

    std::vector<ReceiverProfile> profiles;
    profiles.reserve(receivers);
    for (int i = 0; i < receivers; ++i)
        profiles.push_back(make_profile(erasures[i], demands[i], frame_size, rng));
    return profiles;
}

CompletionRecord run_trial(const SimConfig& config, long trial_index) {
    config.validate();
    auto rng_env = make_stream(config.master_seed, trial_index, 0);
    auto rng_policy = make_stream(config.master_seed, trial_index, 1);
    auto rng_channel = make_stream(config.master_seed, trial_index, 2);

    const auto profiles =
        draw_profiles(config.receivers, config.frame_size, config.mean_erasure,
                      config.mean_demand, config.spread_erasure, config.spread_demand, rng_env);
    FrameState state = init_frame(profiles, config.frame_size, rng_env);

    CompletionRecord record;
    if (config.policy.variant == PolicyVariant::PerfectRnc) {
        record.completion_delay = rnc_completion_delay(state, rng_channel);
        if (config.include_initial) record.completion_delay += config.frame_size;
        return record;
    }

    std::vector<double> success_probs(config.receivers);
    for (int i = 0; i < config.receivers; ++i) success_probs[i] = profiles[i].success_prob;

    const long cap = config.effective_max_slots();
    while (!is_complete(state)) {
        if (record.completion_delay >= cap) {
            record.truncated = true;
            break;
        }
        const IdncGraph graph = build_graph(state);
        const Clique clique = select_clique(config.policy, graph, weighted_wants(state),
                                            rng_policy, config.secondary_weight, success_probs);
        if (!instantly_decodable(state, clique, graph))
            throw std::logic_error("policy produced a non-decodable clique");
        SlotRecord slot;
        slot.packets = clique.packets;
        slot.targets = clique_targets(graph, clique);
        for (const auto& target : slot.targets)
            slot.outcomes.push_back(bernoulli(rng_channel, success_probs[target.receiver]));
        state = apply_reception(state, slot.targets, slot.outcomes);
        record.transcript.push_back(std::move(slot));
        ++record.completion_delay;
    }
    if (config.include_initial) record.completion_delay += config.frame_size;
    return record;
}

ExperimentSummary run_experiment(const SimConfig& config) {
    config.validate();
    std::vector<double> delays(config.trials, 0.0);
    std::vector<char> truncated(config.trials, 0);

    const int workers = static_cast<int>(std::min<long>(config.threads, config.trials));
    auto run_range = [&](long begin, long end) {
        for (long t = begin; t < end; ++t) {
            const CompletionRecord record = run_trial(config, t);
            delays[t] = static_cast<double>(record.completion_delay);
            truncated[t] = record.truncated ? 1 : 0;
        }
    };
    if (workers <= 1) {
        run_range(0, config.trials);
    } else {
        std::vector<std::future<void>> jobs;
        const long chunk = (config.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, run_range, w * chunk,
                                      std::min<long>(config.trials, (w + 1) * chunk)));
        for (auto& job : jobs) job.get();
    }

    ExperimentSummary summary;
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < config.trials; ++t) {
        if (truncated[t]) {
            ++summary.truncated;
            continue;
        }
        ++summary.trials;
        sum += delays[t];
        sum_sq += delays[t] * delays[t];
    }
    if (summary.trials > 0) summary.mean_delay = sum / summary.trials;
    if (summary.trials > 1)
        summary.stderr_ = std::sqrt(
            std::max(0.0, (sum_sq - sum * sum / summary.trials) / (summary.trials - 1)) /
            summary.trials);
    return summary;
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "mu") return SweepAxis::Mu;
    if (name == "M") return SweepAxis::M;
    if (name == "N") return SweepAxis::N;
    if (name == "p") return SweepAxis::P;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Mu: return "mu";
        case SweepAxis::M: return "M";
        case SweepAxis::N: return "N";
        case SweepAxis::P: return "p";
    }
    return "?";
}

std::vector<ResultRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                 const std::vector<double>& values,
                                 const std::vector<PolicyKind>& policies) {
    std::vector<ResultRow> rows;
    for (size_t cell = 0; cell < values.size(); ++cell) {
        SimConfig config = base;
        const double value = values[cell];
        switch (axis) {
            case SweepAxis::Mu: config.mean_demand = value; break;
            case SweepAxis::M: config.receivers = static_cast<int>(value); break;
            case SweepAxis::N: config.frame_size = static_cast<int>(value); break;
            case SweepAxis::P: config.mean_erasure = value; break;
        }
        std::uint64_t cell_seed = base.master_seed;
        (void)splitmix64(cell_seed);
        cell_seed ^= 0xA24BAED4963EE407ull * (cell + 1);
        config.master_seed = splitmix64(cell_seed);
        for (const auto& policy : policies) {
            config.policy = policy;
            const ExperimentSummary summary = run_experiment(config);
            rows.push_back({axis_name(axis), value, policy.name(), summary.mean_delay,
                            summary.stderr_, summary.trials, summary.truncated,
                            config.master_seed});
        }
    }
    return rows;
}

} // namespace idnc
