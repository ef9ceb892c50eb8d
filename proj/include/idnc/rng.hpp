#pragma once

#include <cstdint>
#include <random>

namespace idnc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Independent stream derived from (master_seed, trial, stream). Trials only
// ever see streams derived this way, so results are reproducible and
// order-independent under any parallel schedule.
inline std::mt19937_64 make_stream(std::uint64_t master_seed,
                                   std::uint64_t trial,
                                   std::uint64_t stream) {
    std::uint64_t s = master_seed;
    (void)splitmix64(s);
    s ^= 0x9E3779B97F4A7C15ull * (trial + 1);
    (void)splitmix64(s);
    s ^= 0xC2B2AE3D27D4EB4Full * (stream + 1);
    return std::mt19937_64(splitmix64(s));
}

inline bool bernoulli(std::mt19937_64& rng, double p_success) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_success;
}

} // namespace idnc
