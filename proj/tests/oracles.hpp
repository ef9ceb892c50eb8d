#pragma once

// Independent slow-but-obvious reference implementations used to check the
// library: exhaustive placement enumeration for the expectation formulas and
// subset-enumeration clique search.

#include "idnc/analytics.hpp"
#include "idnc/graph.hpp"
#include "idnc/model.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

// Enumerates every (Has, Wants) placement consistent with the cardinalities,
// calling fn(placement); all placements are equally likely.
inline void for_each_placement(const idnc::CardinalityProfile& profile,
                               const std::function<void(const idnc::SetPlacement&)>& fn) {
    const int m = profile.receiver_count();
    const std::uint64_t frame = (1ull << profile.frame_size) - 1;
    idnc::SetPlacement placement;
    placement.has.assign(m, 0);
    placement.wants.assign(m, 0);

    std::function<void(int)> recurse = [&](int i) {
        if (i == m) {
            fn(placement);
            return;
        }
        for (std::uint64_t has = 0; has <= frame; ++has) {
            if (std::popcount(has) != profile.has_sizes[i] || (has & ~frame)) continue;
            const std::uint64_t rest = frame & ~has;
            for (std::uint64_t wants = 0; wants <= frame; ++wants) {
                if (std::popcount(wants) != profile.wants_sizes[i] || (wants & ~rest)) continue;
                placement.has[i] = has;
                placement.wants[i] = wants;
                recurse(i + 1);
            }
        }
    };
    recurse(0);
}

inline long placement_count(const idnc::CardinalityProfile& profile) {
    long count = 0;
    for_each_placement(profile, [&](const idnc::SetPlacement&) { ++count; });
    return count;
}

// Exact E[|E_rho|] by full enumeration of the placement ensemble.
inline double exact_edge_count(const idnc::CardinalityProfile& profile) {
    double total = 0.0;
    long count = 0;
    for_each_placement(profile, [&](const idnc::SetPlacement& placement) {
        total += static_cast<double>(idnc::count_primary_edges(profile, placement));
        ++count;
    });
    return total / count;
}

// Exact E[Delta_i]: mean degree of receiver i's primary vertices, averaged
// over the ensemble (requires psi_i >= 1).
inline double exact_degree(const idnc::CardinalityProfile& profile, int i) {
    double total = 0.0;
    long count = 0;
    for_each_placement(profile, [&](const idnc::SetPlacement& placement) {
        std::uint64_t wants_i = placement.wants[i];
        double degree_sum = 0.0;
        int vertices = 0;
        while (wants_i) {
            const int j = std::countr_zero(wants_i);
            wants_i &= wants_i - 1;
            for (int k = 0; k < profile.receiver_count(); ++k) {
                if (k == i) continue;
                if (placement.wants[k] >> j & 1) degree_sum += 1.0;
                if (placement.has[k] >> j & 1)
                    degree_sum += std::popcount(placement.wants[k] & placement.has[i]);
            }
            ++vertices;
        }
        total += degree_sum / vertices;
        ++count;
    });
    return total / count;
}

// Exact one-step expected primary edge count: enumerates the placement
// ensemble, the reception outcome of every target, and each receiving
// target's uniform packet choice.
inline double exact_one_step_edges(const idnc::CardinalityProfile& profile,
                                   const std::vector<int>& targets_primary,
                                   const std::vector<int>& targets_secondary) {
    const std::uint64_t frame = (1ull << profile.frame_size) - 1;
    struct Target {
        int receiver;
        bool primary;
    };
    std::vector<Target> targets;
    for (int k : targets_primary) targets.push_back({k, true});
    for (int k : targets_secondary) targets.push_back({k, false});

    double total = 0.0;
    long placements = 0;
    for_each_placement(profile, [&](const idnc::SetPlacement& placement) {
        ++placements;
        std::function<double(int, idnc::SetPlacement&)> recurse =
            [&](int t, idnc::SetPlacement& current) -> double {
            if (t == static_cast<int>(targets.size()))
                return static_cast<double>(idnc::count_primary_edges(profile, current));
            const auto [k, primary] = targets[t];
            const double q = profile.success_probs[k];
            double value = (1.0 - q) * recurse(t + 1, current);
            const std::uint64_t pool =
                primary ? current.wants[k] : (frame & ~current.has[k] & ~current.wants[k]);
            if (pool == 0) throw std::invalid_argument("target has no eligible packet");
            const int choices = std::popcount(pool);
            std::uint64_t rest = pool;
            while (rest) {
                const std::uint64_t bit = rest & -rest;
                rest &= rest - 1;
                idnc::SetPlacement next = current;
                next.has[k] |= bit;
                if (primary) next.wants[k] &= ~bit;
                value += q / choices * recurse(t + 1, next);
            }
            return value;
        };
        idnc::SetPlacement copy = placement;
        total += recurse(0, copy);
    });
    return total / placements;
}

// Maximum-weight clique by subset enumeration, with the library tie-break
// order: weight, then cardinality, then lexicographic vertex list.
inline std::vector<int> brute_force_clique(const idnc::IdncGraph& graph,
                                           const idnc::Bits& candidates,
                                           const std::vector<double>& weights) {
    const auto ids = candidates.to_vector();
    const int count = static_cast<int>(ids.size());
    std::vector<int> best;
    double best_weight = -1.0;
    for (std::uint32_t subset = 1; subset < (1u << count); ++subset) {
        std::vector<int> members;
        double weight = 0.0;
        bool ok = true;
        for (int a = 0; a < count && ok; ++a) {
            if (!(subset >> a & 1)) continue;
            for (int v : members)
                if (!graph.adjacent(v, ids[a])) {
                    ok = false;
                    break;
                }
            if (ok) {
                members.push_back(ids[a]);
                weight += weights[ids[a]];
            }
        }
        if (!ok) continue;
        if (weight > best_weight + 1e-12 ||
            (std::abs(weight - best_weight) <= 1e-12 &&
             (members.size() > best.size() ||
              (members.size() == best.size() && members < best)))) {
            best = members;
            best_weight = weight;
        }
    }
    return best;
}

// Random SFM-backed frame state; resamples until the lacking-pair count is
// in [1, max_bits] and at least one packet is wanted.
inline idnc::FrameState random_frame(std::mt19937_64& rng, int max_m, int max_n, int max_bits) {
    for (;;) {
        std::uniform_int_distribution<int> pick_m(1, max_m), pick_n(1, max_n);
        const int m = pick_m(rng), n = pick_n(rng);
        idnc::StateFeedbackMatrix sfm(m, n);
        std::uniform_int_distribution<int> entry(-1, 1);
        int bits = 0, wants = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const int v = entry(rng);
                sfm.set(i, j, static_cast<std::int8_t>(v));
                if (v != 0) ++bits;
                if (v == 1) ++wants;
            }
        if (bits == 0 || bits > max_bits || wants == 0) continue;
        std::uniform_real_distribution<double> pick_q(0.3, 0.95);
        std::vector<double> q(m);
        for (auto& value : q) value = pick_q(rng);
        return idnc::frame_from_sfm(std::move(sfm), std::move(q));
    }
}

inline idnc::CardinalityProfile random_cardinalities(std::mt19937_64& rng, int max_m,
                                                     int max_n) {
    idnc::CardinalityProfile profile;
    std::uniform_int_distribution<int> pick_m(2, max_m), pick_n(2, max_n);
    const int m = pick_m(rng);
    profile.frame_size = pick_n(rng);
    std::uniform_real_distribution<double> pick_q(0.2, 0.95);
    for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick_rho(0, profile.frame_size - 1);
        const int rho = pick_rho(rng);
        const int lacks = profile.frame_size - rho;
        std::uniform_int_distribution<int> pick_psi(1, lacks);
        profile.has_sizes.push_back(rho);
        profile.lacks_sizes.push_back(lacks);
        profile.wants_sizes.push_back(pick_psi(rng));
        profile.success_probs.push_back(pick_q(rng));
    }
    return profile;
}

// SFM built from rows of characters: 'o' Has, 'w' Wants, 'x' unwanted Lacks.
inline idnc::StateFeedbackMatrix sfm_from_rows(const std::vector<std::string>& rows) {
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(rows[0].size());
    idnc::StateFeedbackMatrix sfm(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const char c = rows[i][j];
            sfm.set(i, j, c == 'o' ? 0 : c == 'w' ? 1 : -1);
        }
    return sfm;
}

} // namespace oracles
