#pragma once

#include <random>
#include <vector>

namespace idnc {

// Cardinality-only view of a frame: everything the closed-form expectation
// formulas depend on.
struct CardinalityProfile {
    std::vector<int> has_sizes;   // rho
    std::vector<int> lacks_sizes; // phi
    std::vector<int> wants_sizes; // psi
    std::vector<double> success_probs;
    int frame_size = 0;

    int receiver_count() const { return static_cast<int>(wants_sizes.size()); }
};

void validate_cardinalities(const CardinalityProfile& profile);

// One-step edge-evolution coefficients for a fixed pair of target sets.
struct EvolutionCoefficients {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<double> xi;
};

double xi_coefficient(const CardinalityProfile& profile, int k);
double phi_kernel(const CardinalityProfile& profile, int i, int k, double x);
double lambda_kernel(const CardinalityProfile& profile, int i, int k, double x);

// Expected primary degree of a vertex of receiver i under the uniform
// set-placement ensemble.
double expected_degree(const CardinalityProfile& profile, int i);

double expected_edge_count(const CardinalityProfile& profile);

EvolutionCoefficients evolution_coefficients(const CardinalityProfile& profile,
                                             const std::vector<int>& targets_primary,
                                             const std::vector<int>& targets_secondary);

double expected_degree_evolution(const CardinalityProfile& profile,
                                 const std::vector<int>& targets_primary,
                                 const std::vector<int>& targets_secondary, int i,
                                 double expected_degree_t);

double expected_edge_evolution(const CardinalityProfile& profile,
                               const std::vector<int>& targets_primary,
                               const std::vector<int>& targets_secondary,
                               const std::vector<double>& expected_degrees_t,
                               double expected_edges_t);

// True when E[Delta_h] > E[Delta_i]; preconditions psi_i > psi_h, rho_i < rho_h.
bool degree_dominance_check(const CardinalityProfile& profile, int i, int h);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// A uniform random placement of Has/Wants sets consistent with the profile,
// one packet bitmask per receiver (frame_size <= 64 for these oracles).
struct SetPlacement {
    std::vector<std::uint64_t> has;
    std::vector<std::uint64_t> wants;
};

SetPlacement sample_placement(const CardinalityProfile& profile, std::mt19937_64& rng);
long count_primary_edges(const CardinalityProfile& profile, const SetPlacement& placement);

McEstimate mc_oracle_edge_count(const CardinalityProfile& profile, long trials,
                                std::mt19937_64& rng);

// Simulates one transmission under the independent per-receiver reception
// model of the evolution analysis and rebuilds the primary graph.
McEstimate mc_oracle_one_step_edges(const CardinalityProfile& profile,
                                    const std::vector<int>& targets_primary,
                                    const std::vector<int>& targets_secondary, long trials,
                                    std::mt19937_64& rng);

// Mean post-transmission degree of receiver i's remaining primary vertices.
McEstimate mc_oracle_one_step_degree(const CardinalityProfile& profile,
                                     const std::vector<int>& targets_primary,
                                     const std::vector<int>& targets_secondary, int i,
                                     long trials, std::mt19937_64& rng);

} // namespace idnc
