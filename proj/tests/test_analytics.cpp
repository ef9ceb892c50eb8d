#include "idnc/analytics.hpp"

#include "doctest.h"
#include "idnc/rng.hpp"
#include "oracles.hpp"

using namespace idnc;

namespace {

CardinalityProfile profile_of(std::vector<int> rho, std::vector<int> psi, int n,
                              std::vector<double> q = {}) {
    CardinalityProfile profile;
    profile.frame_size = n;
    profile.has_sizes = std::move(rho);
    profile.wants_sizes = std::move(psi);
    for (int r : profile.has_sizes) profile.lacks_sizes.push_back(n - r);
    profile.success_probs =
        q.empty() ? std::vector<double>(profile.has_sizes.size(), 1.0) : std::move(q);
    return profile;
}

} // namespace

TEST_CASE("hand-checked expectation values") {
    // two receivers, N=2, each holds one packet and wants the other
    const auto pair = profile_of({1, 1}, {1, 1}, 2);
    CHECK(expected_degree(pair, 0) == doctest::Approx(1.0));
    CHECK(expected_edge_count(pair) == doctest::Approx(1.0));

    // three receivers, N=3, each holds two and wants the third
    const auto trio = profile_of({2, 2, 2}, {1, 1, 1}, 3);
    CHECK(expected_degree(trio, 0) == doctest::Approx(2.0));
    CHECK(expected_edge_count(trio) == doctest::Approx(3.0));
}

TEST_CASE("validate_cardinalities rejects malformed profiles") {
    CHECK_THROWS_AS(validate_cardinalities(profile_of({2}, {1}, 2)), std::invalid_argument);
    CHECK_THROWS_AS(validate_cardinalities(profile_of({1}, {2}, 2)), std::invalid_argument);
    CHECK_THROWS_AS(validate_cardinalities(profile_of({1, 1}, {1, 1}, 2, {0.5, 0.0})),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_cardinalities(profile_of({1, 1}, {1, 1}, 2)));
}

TEST_CASE("closed-form degree and edge count match exhaustive enumeration") {
    auto rng = make_stream(17, 0, 0);
    for (int round = 0; round < 15; ++round) {
        const auto profile = oracles::random_cardinalities(rng, 3, 4);
        CHECK(expected_edge_count(profile) ==
              doctest::Approx(oracles::exact_edge_count(profile)).epsilon(1e-9));
        for (int i = 0; i < profile.receiver_count(); ++i)
            CHECK(expected_degree(profile, i) ==
                  doctest::Approx(oracles::exact_degree(profile, i)).epsilon(1e-9));
    }
}

TEST_CASE("one-step edge evolution matches exhaustive enumeration") {
    auto rng = make_stream(18, 0, 0);
    int accepted = 0;
    while (accepted < 12) {
        const auto profile = oracles::random_cardinalities(rng, 3, 3);
        std::vector<int> primary, secondary;
        std::uniform_int_distribution<int> coin(0, 2);
        for (int i = 0; i < profile.receiver_count(); ++i) {
            const int role = coin(rng);
            if (role == 0 && profile.wants_sizes[i] >= 1) primary.push_back(i);
            if (role == 1 && profile.lacks_sizes[i] - profile.wants_sizes[i] >= 1)
                secondary.push_back(i);
        }
        if (primary.empty() && secondary.empty()) continue;
        ++accepted;

        std::vector<double> degrees(profile.receiver_count());
        for (int i = 0; i < profile.receiver_count(); ++i)
            degrees[i] = expected_degree(profile, i);
        const double closed = expected_edge_evolution(profile, primary, secondary, degrees,
                                                      expected_edge_count(profile));
        const double exact = oracles::exact_one_step_edges(profile, primary, secondary);
        CHECK(closed == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("evolution coefficient preconditions") {
    const auto profile = profile_of({1, 1}, {1, 1}, 2, {0.5, 0.5});
    CHECK_THROWS_AS(evolution_coefficients(profile, {0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(evolution_coefficients(profile, {2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(expected_degree(profile_of({0}, {1}, 1), 0), std::invalid_argument);
}

TEST_CASE("worse-off receivers have denser vertices") {
    // psi_0 > psi_1 and rho_0 < rho_1 implies E[Delta_1] > E[Delta_0]
    const auto profile = profile_of({1, 3}, {3, 1}, 5);
    CHECK(degree_dominance_check(profile, 0, 1));
    CHECK_THROWS_AS(degree_dominance_check(profile, 1, 0), std::invalid_argument);

    auto rng = make_stream(19, 0, 0);
    for (int round = 0; round < 400; ++round) {
        const auto random = oracles::random_cardinalities(rng, 5, 7);
        for (int i = 0; i < random.receiver_count(); ++i)
            for (int h = 0; h < random.receiver_count(); ++h)
                if (i != h && random.wants_sizes[i] > random.wants_sizes[h] &&
                    random.has_sizes[i] < random.has_sizes[h])
                    CHECK(degree_dominance_check(random, i, h));
    }
}

TEST_CASE("targeted receivers never lose expected degree relative to untargeted") {
    auto rng = make_stream(20, 0, 0);
    for (int round = 0; round < 400; ++round) {
        const auto profile = oracles::random_cardinalities(rng, 5, 7);
        std::vector<int> primary, secondary;
        std::uniform_int_distribution<int> coin(0, 2);
        for (int i = 0; i < profile.receiver_count(); ++i) {
            const int role = coin(rng);
            if (role == 0 && profile.wants_sizes[i] >= 1) primary.push_back(i);
            if (role == 1 && profile.lacks_sizes[i] - profile.wants_sizes[i] >= 1)
                secondary.push_back(i);
        }
        const auto coeffs = evolution_coefficients(profile, primary, secondary);
        for (int i : primary) CHECK(coeffs.alpha[i] >= coeffs.beta[i] - 1e-12);
        for (int i : secondary) CHECK(coeffs.alpha[i] >= coeffs.beta[i] - 1e-12);
    }
}

TEST_CASE("monte carlo edge oracle agrees with the exact enumeration") {
    auto rng = make_stream(21, 0, 0);
    const auto profile = profile_of({1, 2, 0}, {2, 1, 2}, 4, {0.6, 0.8, 0.4});
    const auto mc = mc_oracle_edge_count(profile, 40000, rng);
    CHECK(std::abs(mc.mean - oracles::exact_edge_count(profile)) < 3.5 * mc.stderr_);
    CHECK(mc.stderr_ > 0.0);
}

TEST_CASE("monte carlo one-step oracle agrees with the exact enumeration") {
    auto rng = make_stream(22, 0, 0);
    const auto profile = profile_of({1, 1, 2}, {1, 2, 1}, 3, {0.7, 0.5, 0.9});
    const std::vector<int> primary{1, 2};
    const std::vector<int> secondary{0};
    const auto mc = mc_oracle_one_step_edges(profile, primary, secondary, 40000, rng);
    const double exact = oracles::exact_one_step_edges(profile, primary, secondary);
    CHECK(std::abs(mc.mean - exact) < 3.5 * mc.stderr_);
}
