#include "idnc/model.hpp"

#include "idnc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace idnc {

namespace {

std::vector<int> sample_subset(int universe, int count, std::mt19937_64& rng) {
    std::vector<int> pool(universe);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < count; ++i) {
        std::uniform_int_distribution<int> pick(i, universe - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

void recount(FrameState& state) {
    const int m = state.receiver_count();
    const int n = state.packet_count();
    state.has_sizes.assign(m, 0);
    state.lacks_sizes.assign(m, 0);
    state.wants_sizes.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto e = state.sfm.at(i, j);
            if (e == 0) {
                ++state.has_sizes[i];
            } else {
                ++state.lacks_sizes[i];
                if (e == 1) ++state.wants_sizes[i];
            }
        }
    }
}

} // namespace

ReceiverProfile make_profile(double erasure_prob, double demand_ratio, int frame_size,
                             std::mt19937_64& rng) {
    if (frame_size < 1) throw std::invalid_argument("frame_size must be >= 1");
    ReceiverProfile profile;
    profile.erasure_prob = erasure_prob;
    profile.success_prob = 1.0 - erasure_prob;
    profile.demand_ratio = demand_ratio;
    const int wanted = std::max(1, static_cast<int>(std::lround(demand_ratio * frame_size)));
    profile.primary_packets = sample_subset(frame_size, std::min(wanted, frame_size), rng);
    validate_profile(profile, frame_size);
    return profile;
}

ReceiverProfile forced_loss_profile(std::vector<int> primary_packets) {
    ReceiverProfile profile;
    profile.erasure_prob = 1.0;
    profile.success_prob = 0.0;
    profile.demand_ratio = 1.0;
    profile.primary_packets = std::move(primary_packets);
    profile.forced_loss = true;
    std::sort(profile.primary_packets.begin(), profile.primary_packets.end());
    return profile;
}

void validate_profile(const ReceiverProfile& profile, int frame_size) {
    if (profile.forced_loss) return;
    if (!(profile.erasure_prob >= 0.0 && profile.erasure_prob < 1.0))
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    if (std::abs(profile.success_prob - (1.0 - profile.erasure_prob)) > 1e-12)
        throw std::invalid_argument("success_prob must equal 1 - erasure_prob");
    if (!(profile.demand_ratio > 0.0 && profile.demand_ratio <= 1.0))
        throw std::invalid_argument("demand ratio must lie in (0, 1]");
    const int expected =
        std::min(frame_size,
                 std::max(1, static_cast<int>(std::lround(profile.demand_ratio * frame_size))));
    if (static_cast<int>(profile.primary_packets.size()) != expected)
        throw std::invalid_argument("primary set size inconsistent with demand ratio");
    for (int j : profile.primary_packets)
        if (j < 0 || j >= frame_size) throw std::invalid_argument("primary packet out of range");
}

FrameState init_frame(std::vector<ReceiverProfile> profiles, int frame_size,
                      std::mt19937_64& rng) {
    if (frame_size < 1) throw std::invalid_argument("frame size must be >= 1");
    if (profiles.empty()) throw std::invalid_argument("need at least one receiver");
    for (const auto& profile : profiles) validate_profile(profile, frame_size);

    FrameState state;
    state.sfm = StateFeedbackMatrix(static_cast<int>(profiles.size()), frame_size);
    for (int i = 0; i < static_cast<int>(profiles.size()); ++i) {
        const auto& profile = profiles[i];
        for (int j = 0; j < frame_size; ++j) {
            const bool received = !profile.forced_loss && bernoulli(rng, profile.success_prob);
            if (received) {
                state.sfm.set(i, j, 0);
            } else {
                const bool wanted = std::binary_search(profile.primary_packets.begin(),
                                                       profile.primary_packets.end(), j);
                state.sfm.set(i, j, wanted ? 1 : -1);
            }
        }
    }
    state.profiles = std::move(profiles);
    recount(state);
    return state;
}

FrameState frame_from_sfm(StateFeedbackMatrix sfm, std::vector<double> success_probs) {
    const int m = sfm.receiver_count();
    const int n = sfm.packet_count();
    if (m == 0 || n == 0) throw std::invalid_argument("empty SFM");
    if (static_cast<int>(success_probs.size()) != m)
        throw std::invalid_argument("one success probability per receiver required");

    FrameState state;
    state.profiles.resize(m);
    for (int i = 0; i < m; ++i) {
        auto& profile = state.profiles[i];
        const double q = success_probs[i];
        if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("success probability out of range");
        profile.success_prob = q;
        profile.erasure_prob = 1.0 - q;
        profile.forced_loss = (q == 0.0);
        for (int j = 0; j < n; ++j)
            if (sfm.at(i, j) == 1) profile.primary_packets.push_back(j);
        profile.demand_ratio =
            std::max<double>(1, profile.primary_packets.size()) / static_cast<double>(n);
    }
    state.sfm = std::move(sfm);
    recount(state);
    return state;
}

FrameState apply_reception(const FrameState& state,
                           const std::vector<ReceptionTarget>& targets,
                           const std::vector<bool>& outcomes) {
    if (targets.size() != outcomes.size())
        throw std::invalid_argument("one outcome per targeted receiver required");
    FrameState next = state;
    for (size_t t = 0; t < targets.size(); ++t) {
        const auto [receiver, packet] = targets[t];
        if (receiver < 0 || receiver >= state.receiver_count() || packet < 0 ||
            packet >= state.packet_count())
            throw std::invalid_argument("reception target out of range");
        if (state.sfm.at(receiver, packet) == 0)
            throw std::invalid_argument("targeted packet is already in the receiver's Has set");
        if (!outcomes[t]) continue;
        if (next.sfm.at(receiver, packet) == 1) --next.wants_sizes[receiver];
        next.sfm.set(receiver, packet, 0);
        ++next.has_sizes[receiver];
        --next.lacks_sizes[receiver];
    }
    return next;
}

std::vector<double> weighted_wants(const FrameState& state) {
    std::vector<double> result(state.receiver_count());
    for (int i = 0; i < state.receiver_count(); ++i) {
        const double q = state.profiles[i].success_prob;
        if (q <= 0.0) throw std::domain_error("weighted Wants undefined for q = 0");
        result[i] = state.wants_sizes[i] / q;
    }
    return result;
}

bool is_complete(const FrameState& state) {
    return std::all_of(state.wants_sizes.begin(), state.wants_sizes.end(),
                       [](int w) { return w == 0; });
}

} // namespace idnc
