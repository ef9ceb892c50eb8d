#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace idnc {

// Per-receiver channel and demand description. success_prob must equal
// 1 - erasure_prob. q = 0 (guaranteed loss) is rejected by validate();
// deterministic total-loss fixtures go through forced_loss_profile().
struct ReceiverProfile {
    double erasure_prob = 0.0;
    double success_prob = 1.0;
    double demand_ratio = 1.0;
    std::vector<int> primary_packets; // sorted packet indices in [0, N)
    bool forced_loss = false;         // test hook, permits q = 0
};

ReceiverProfile make_profile(double erasure_prob, double demand_ratio, int frame_size,
                             std::mt19937_64& rng);
ReceiverProfile forced_loss_profile(std::vector<int> primary_packets);

void validate_profile(const ReceiverProfile& profile, int frame_size);

// SFM entry values: 0 packet is in Has, 1 in Wants, -1 in Lacks\Wants.
class StateFeedbackMatrix {
  public:
    StateFeedbackMatrix() = default;
    StateFeedbackMatrix(int receivers, int packets)
        : m_(receivers), n_(packets), entries_(static_cast<size_t>(receivers) * packets, 0) {}

    int receiver_count() const { return m_; }
    int packet_count() const { return n_; }

    std::int8_t at(int receiver, int packet) const {
        return entries_[static_cast<size_t>(receiver) * n_ + packet];
    }
    void set(int receiver, int packet, std::int8_t value) {
        entries_[static_cast<size_t>(receiver) * n_ + packet] = value;
    }

    bool operator==(const StateFeedbackMatrix& other) const = default;

  private:
    int m_ = 0;
    int n_ = 0;
    std::vector<std::int8_t> entries_;
};

// Immutable snapshot of the frame during the recovery phase. Cardinality
// vectors are cached and always re-derivable from the SFM.
struct FrameState {
    StateFeedbackMatrix sfm;
    std::vector<ReceiverProfile> profiles;
    std::vector<int> has_sizes;
    std::vector<int> lacks_sizes;
    std::vector<int> wants_sizes;

    int receiver_count() const { return sfm.receiver_count(); }
    int packet_count() const { return sfm.packet_count(); }
};

// One (receiver, packet) pair served by a coded transmission.
struct ReceptionTarget {
    int receiver = 0;
    int packet = 0;
};

// Runs the initial uncoded transmission phase.
FrameState init_frame(std::vector<ReceiverProfile> profiles, int frame_size,
                      std::mt19937_64& rng);

// Builds a state directly from an SFM (fixtures, SSP enumeration). Profiles
// need only carry channel probabilities; primary sets are implied by the SFM.
FrameState frame_from_sfm(StateFeedbackMatrix sfm, std::vector<double> success_probs);

// Applies one slot of reception feedback; returns the successor state.
FrameState apply_reception(const FrameState& state,
                           const std::vector<ReceptionTarget>& targets,
                           const std::vector<bool>& outcomes);

// Channel-weighted Wants vector, psi_i / q_i.
std::vector<double> weighted_wants(const FrameState& state);

bool is_complete(const FrameState& state);

} // namespace idnc
