#include "idnc/analytics.hpp"

#include "idnc/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace idnc {

namespace {

bool contains(const std::vector<int>& sorted, int value) {
    return std::binary_search(sorted.begin(), sorted.end(), value);
}

void require_pair_preconditions(const CardinalityProfile& profile,
                                const std::vector<int>& targets_primary,
                                const std::vector<int>& targets_secondary) {
    validate_cardinalities(profile);
    if (profile.frame_size < 2) throw std::invalid_argument("formulas require N >= 2");
    for (int k : targets_primary)
        if (contains(targets_secondary, k))
            throw std::invalid_argument("primary and secondary target sets overlap");
    for (int k : targets_primary)
        if (k < 0 || k >= profile.receiver_count())
            throw std::invalid_argument("primary target out of range");
    for (int k : targets_secondary)
        if (k < 0 || k >= profile.receiver_count())
            throw std::invalid_argument("secondary target out of range");
}

McEstimate finish(double sum, double sum_sq, long trials) {
    McEstimate est;
    est.mean = sum / trials;
    if (trials > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
        est.stderr_ = std::sqrt(var / trials);
    }
    return est;
}

// Uniform c-subset of the bits set in `pool`.
std::uint64_t sample_bits(std::uint64_t pool, int count, std::mt19937_64& rng) {
    std::vector<int> positions;
    while (pool) {
        positions.push_back(std::countr_zero(pool));
        pool &= pool - 1;
    }
    std::uint64_t chosen = 0;
    const int size = static_cast<int>(positions.size());
    for (int i = 0; i < count; ++i) {
        std::uniform_int_distribution<int> pick(i, size - 1);
        std::swap(positions[i], positions[pick(rng)]);
        chosen |= 1ull << positions[i];
    }
    return chosen;
}

int pick_uniform_bit(std::uint64_t mask, std::mt19937_64& rng) {
    const int count = std::popcount(mask);
    std::uniform_int_distribution<int> pick(0, count - 1);
    int skip = pick(rng);
    while (skip--) mask &= mask - 1;
    return std::countr_zero(mask);
}

} // namespace

void validate_cardinalities(const CardinalityProfile& profile) {
    const int m = profile.receiver_count();
    if (m == 0) throw std::invalid_argument("empty cardinality profile");
    if (profile.frame_size < 1) throw std::invalid_argument("frame size must be >= 1");
    if (static_cast<int>(profile.has_sizes.size()) != m ||
        static_cast<int>(profile.lacks_sizes.size()) != m ||
        static_cast<int>(profile.success_probs.size()) != m)
        throw std::invalid_argument("cardinality vectors must share one length");
    for (int i = 0; i < m; ++i) {
        if (profile.has_sizes[i] + profile.lacks_sizes[i] != profile.frame_size)
            throw std::invalid_argument("has + lacks must equal the frame size");
        if (profile.wants_sizes[i] < 0 || profile.wants_sizes[i] > profile.lacks_sizes[i])
            throw std::invalid_argument("wants size outside [0, lacks size]");
        if (!(profile.success_probs[i] > 0.0 && profile.success_probs[i] <= 1.0))
            throw std::invalid_argument("success probability outside (0, 1]");
    }
}

double xi_coefficient(const CardinalityProfile& profile, int k) {
    const double n = profile.frame_size;
    return profile.wants_sizes[k] * static_cast<double>(profile.has_sizes[k]) / (n * (n - 1));
}

double phi_kernel(const CardinalityProfile& profile, int i, int k, double x) {
    const double n = profile.frame_size;
    return profile.success_probs[k] / n *
           (1.0 + (profile.has_sizes[k] - profile.wants_sizes[k] + 1) *
                      (profile.has_sizes[i] + x) / (n - 1));
}

double lambda_kernel(const CardinalityProfile& profile, int i, int k, double x) {
    const double n = profile.frame_size;
    return profile.success_probs[k] * profile.wants_sizes[k] * (profile.has_sizes[i] + x) /
           (n * (n - 1));
}

double expected_degree(const CardinalityProfile& profile, int i) {
    validate_cardinalities(profile);
    if (profile.frame_size < 2) throw std::invalid_argument("expected_degree requires N >= 2");
    const double n = profile.frame_size;
    double degree = 0.0;
    for (int k = 0; k < profile.receiver_count(); ++k) {
        if (k == i) continue;
        degree += profile.wants_sizes[k] / n *
                  (1.0 + profile.has_sizes[k] * static_cast<double>(profile.has_sizes[i]) /
                             (n - 1));
    }
    return degree;
}

double expected_edge_count(const CardinalityProfile& profile) {
    double total = 0.0;
    for (int i = 0; i < profile.receiver_count(); ++i)
        total += profile.wants_sizes[i] * expected_degree(profile, i);
    return 0.5 * total;
}

EvolutionCoefficients evolution_coefficients(const CardinalityProfile& profile,
                                             const std::vector<int>& targets_primary,
                                             const std::vector<int>& targets_secondary) {
    require_pair_preconditions(profile, targets_primary, targets_secondary);
    const int m = profile.receiver_count();
    EvolutionCoefficients coeffs;
    coeffs.alpha.assign(m, 0.0);
    coeffs.beta.assign(m, 0.0);
    coeffs.gamma.assign(m, 0.0);
    coeffs.xi.resize(m);
    for (int k = 0; k < m; ++k) coeffs.xi[k] = xi_coefficient(profile, k);

    for (int i = 0; i < m; ++i) {
        const double qi = profile.success_probs[i];
        for (int k = 0; k < m; ++k) {
            if (k == i) continue;
            coeffs.alpha[i] += qi * coeffs.xi[k];
            coeffs.gamma[i] += coeffs.xi[k];
        }
        for (int k : targets_primary) {
            if (k == i) continue;
            coeffs.alpha[i] -= phi_kernel(profile, i, k, qi);
            coeffs.beta[i] -= phi_kernel(profile, i, k, 0.0);
            coeffs.gamma[i] -= phi_kernel(profile, i, k, 1.0);
        }
        for (int k : targets_secondary) {
            if (k == i) continue;
            coeffs.alpha[i] += lambda_kernel(profile, i, k, qi);
            coeffs.beta[i] += lambda_kernel(profile, i, k, 0.0);
            coeffs.gamma[i] += lambda_kernel(profile, i, k, 1.0);
        }
    }
    return coeffs;
}

double expected_degree_evolution(const CardinalityProfile& profile,
                                 const std::vector<int>& targets_primary,
                                 const std::vector<int>& targets_secondary, int i,
                                 double expected_degree_t) {
    const auto coeffs = evolution_coefficients(profile, targets_primary, targets_secondary);
    const bool targeted = contains(targets_primary, i) || contains(targets_secondary, i);
    return expected_degree_t + (targeted ? coeffs.alpha[i] : coeffs.beta[i]);
}

double expected_edge_evolution(const CardinalityProfile& profile,
                               const std::vector<int>& targets_primary,
                               const std::vector<int>& targets_secondary,
                               const std::vector<double>& expected_degrees_t,
                               double expected_edges_t) {
    const auto coeffs = evolution_coefficients(profile, targets_primary, targets_secondary);
    double result = expected_edges_t;
    for (int i : targets_primary)
        result -= 0.5 * profile.success_probs[i] * (expected_degrees_t[i] + coeffs.gamma[i]);
    for (int i = 0; i < profile.receiver_count(); ++i) {
        const bool targeted = contains(targets_primary, i) || contains(targets_secondary, i);
        result += 0.5 * profile.wants_sizes[i] * (targeted ? coeffs.alpha[i] : coeffs.beta[i]);
    }
    return result;
}

bool degree_dominance_check(const CardinalityProfile& profile, int i, int h) {
    if (!(profile.wants_sizes[i] > profile.wants_sizes[h] &&
          profile.has_sizes[i] < profile.has_sizes[h]))
        throw std::invalid_argument("degree dominance requires psi_i > psi_h and rho_i < rho_h");
    return expected_degree(profile, h) > expected_degree(profile, i);
}

SetPlacement sample_placement(const CardinalityProfile& profile, std::mt19937_64& rng) {
    validate_cardinalities(profile);
    if (profile.frame_size > 64)
        throw std::invalid_argument("placement oracle supports N <= 64 only");
    const std::uint64_t frame =
        profile.frame_size == 64 ? ~0ull : (1ull << profile.frame_size) - 1;
    SetPlacement placement;
    placement.has.resize(profile.receiver_count());
    placement.wants.resize(profile.receiver_count());
    for (int i = 0; i < profile.receiver_count(); ++i) {
        placement.has[i] = sample_bits(frame, profile.has_sizes[i], rng);
        placement.wants[i] = sample_bits(frame & ~placement.has[i], profile.wants_sizes[i], rng);
    }
    return placement;
}

long count_primary_edges(const CardinalityProfile& profile, const SetPlacement& placement) {
    long edges = 0;
    const int m = profile.receiver_count();
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            edges += std::popcount(placement.wants[i] & placement.wants[k]);
            edges += static_cast<long>(std::popcount(placement.wants[i] & placement.has[k])) *
                     std::popcount(placement.wants[k] & placement.has[i]);
        }
    }
    return edges;
}

McEstimate mc_oracle_edge_count(const CardinalityProfile& profile, long trials,
                                std::mt19937_64& rng) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        const auto edges =
            static_cast<double>(count_primary_edges(profile, sample_placement(profile, rng)));
        sum += edges;
        sum_sq += edges * edges;
    }
    return finish(sum, sum_sq, trials);
}

namespace {

// Applies the independent per-receiver reception model of the evolution
// theorems: a targeted receiver gains a uniformly chosen wanted (primary
// target) or unwanted lacking (secondary target) packet with probability q.
void one_step_update(const CardinalityProfile& profile, SetPlacement& placement,
                     const std::vector<int>& targets_primary,
                     const std::vector<int>& targets_secondary, std::mt19937_64& rng) {
    const std::uint64_t frame =
        profile.frame_size == 64 ? ~0ull : (1ull << profile.frame_size) - 1;
    for (int k : targets_primary) {
        if (placement.wants[k] == 0)
            throw std::invalid_argument("primary target has an empty Wants set");
        if (!bernoulli(rng, profile.success_probs[k])) continue;
        const int j = pick_uniform_bit(placement.wants[k], rng);
        placement.wants[k] &= ~(1ull << j);
        placement.has[k] |= 1ull << j;
    }
    for (int k : targets_secondary) {
        const std::uint64_t unwanted = frame & ~placement.has[k] & ~placement.wants[k];
        if (unwanted == 0)
            throw std::invalid_argument("secondary target has no unwanted lacking packet");
        if (!bernoulli(rng, profile.success_probs[k])) continue;
        placement.has[k] |= 1ull << pick_uniform_bit(unwanted, rng);
    }
}

} // namespace

McEstimate mc_oracle_one_step_edges(const CardinalityProfile& profile,
                                    const std::vector<int>& targets_primary,
                                    const std::vector<int>& targets_secondary, long trials,
                                    std::mt19937_64& rng) {
    require_pair_preconditions(profile, targets_primary, targets_secondary);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        auto placement = sample_placement(profile, rng);
        one_step_update(profile, placement, targets_primary, targets_secondary, rng);
        const auto edges = static_cast<double>(count_primary_edges(profile, placement));
        sum += edges;
        sum_sq += edges * edges;
    }
    return finish(sum, sum_sq, trials);
}

McEstimate mc_oracle_one_step_degree(const CardinalityProfile& profile,
                                     const std::vector<int>& targets_primary,
                                     const std::vector<int>& targets_secondary, int i,
                                     long trials, std::mt19937_64& rng) {
    require_pair_preconditions(profile, targets_primary, targets_secondary);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    long counted = 0;
    for (long t = 0; t < trials; ++t) {
        auto placement = sample_placement(profile, rng);
        one_step_update(profile, placement, targets_primary, targets_secondary, rng);
        std::uint64_t wants_i = placement.wants[i];
        if (wants_i == 0) continue; // no vertex left to measure
        double degree_sum = 0.0;
        int vertex_count = 0;
        while (wants_i) {
            const int j = std::countr_zero(wants_i);
            wants_i &= wants_i - 1;
            long degree = 0;
            for (int k = 0; k < profile.receiver_count(); ++k) {
                if (k == i) continue;
                if (placement.wants[k] >> j & 1) ++degree;
                if (placement.has[k] >> j & 1)
                    degree += std::popcount(placement.wants[k] & placement.has[i]);
            }
            degree_sum += static_cast<double>(degree);
            ++vertex_count;
        }
        const double mean_degree = degree_sum / vertex_count;
        sum += mean_degree;
        sum_sq += mean_degree * mean_degree;
        ++counted;
    }
    if (counted == 0) throw std::runtime_error("receiver never retained a primary vertex");
    return finish(sum, sum_sq, counted);
}

} // namespace idnc
