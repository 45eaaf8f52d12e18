#include <random>

#include "doctest.h"
#include "groupphi/info_measures.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace groupphi;

namespace {

const std::vector<std::size_t> kNode0{0};

JointLagDistribution make_joint(
    const std::vector<std::pair<std::pair<int, int>, double>>& entries) {
    JointLagDistribution j;
    j.subset = {0};
    j.tau = 1;
    j.sample_count = 1;
    for (const auto& [states, p] : entries)
        j.table[JointLagDistribution::key(states.first, states.second)] = p;
    return j;
}

} // namespace

TEST_CASE("joint_lag_distribution on tiny matrices") {
    SUBCASE("single transition") {
        const auto m = StateMatrix::make({{0}, {1}}, {"a"});
        const auto j = joint_lag_distribution(m, kNode0, 1);
        CHECK(j.sample_count == 1);
        REQUIRE(j.table.size() == 1);
        CHECK(j.table.at(JointLagDistribution::key(0, 1)) == doctest::Approx(1.0));
    }
    SUBCASE("alternating series: hand-enumerated transition pairs") {
        const auto m = StateMatrix::make({{0}, {1}, {0}, {1}}, {"a"});
        const auto j = joint_lag_distribution(m, kNode0, 1);
        CHECK(j.sample_count == 3);
        CHECK(j.table.at(JointLagDistribution::key(0, 1)) ==
              doctest::Approx(2.0 / 3.0));
        CHECK(j.table.at(JointLagDistribution::key(1, 0)) ==
              doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("tau bounds") {
        const auto m = StateMatrix::make({{0}, {1}}, {"a"});
        CHECK_THROWS_AS(joint_lag_distribution(m, kNode0, 2), Error);
        CHECK_THROWS_AS(joint_lag_distribution(m, kNode0, 0), Error);
        CHECK_THROWS_AS(joint_lag_distribution(m, {}, 1), Error);
    }
}

TEST_CASE("entropy basics") {
    CHECK(entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(entropy(std::vector<double>{1.0}) == doctest::Approx(0.0));
    CHECK(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(2.0));
    CHECK_THROWS_AS(entropy(std::vector<double>{0.5, 0.4}), Error);
}

TEST_CASE("conditional entropy directions") {
    SUBCASE("perfect copy is deterministic both ways") {
        const auto j = make_joint({{{0, 0}, 0.5}, {{1, 1}, 0.5}});
        CHECK(conditional_entropy(j, CondDirection::past_given_present) ==
              doctest::Approx(0.0));
        CHECK(conditional_entropy(j, CondDirection::present_given_past) ==
              doctest::Approx(0.0));
    }
    SUBCASE("independent fair coins") {
        const auto j = make_joint(
            {{{0, 0}, 0.25}, {{0, 1}, 0.25}, {{1, 0}, 0.25}, {{1, 1}, 0.25}});
        CHECK(conditional_entropy(j, CondDirection::past_given_present) ==
              doctest::Approx(1.0));
    }
    SUBCASE("present determines past on the 2-entry table") {
        const auto j = make_joint({{{0, 1}, 2.0 / 3.0}, {{1, 0}, 1.0 / 3.0}});
        CHECK(conditional_entropy(j, CondDirection::past_given_present) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("mutual information basics") {
    const auto indep = make_joint(
        {{{0, 0}, 0.25}, {{0, 1}, 0.25}, {{1, 0}, 0.25}, {{1, 1}, 0.25}});
    CHECK(mutual_information(indep) == doctest::Approx(0.0));

    const auto copy = make_joint({{{0, 0}, 0.5}, {{1, 1}, 0.5}});
    CHECK(mutual_information(copy) == doctest::Approx(1.0));

    // lag-1 copy system over both nodes: I = 1 bit
    const auto m = testgen::copy_system(100000, 1, 42);
    const std::vector<std::size_t> both{0, 1};
    const auto j = joint_lag_distribution(m, both, 1);
    CHECK(mutual_information(j) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("non-negativity and chain rule over random joints") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = testgen::random_coupled_system(1 + rng() % 4, 80,
                                                      1000 + trial);
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < m.nodes(); ++i) subset.push_back(i);
        const auto j = joint_lag_distribution(m, subset, 1 + trial % 3);

        const double hj = joint_entropy(j);
        const double hp = past_entropy(j);
        const double hc = present_entropy(j);
        const double mi = mutual_information(j);
        CHECK(hj >= -1e-12);
        CHECK(mi >= -1e-12);
        CHECK(conditional_entropy(j, CondDirection::past_given_present) >=
              -1e-12);
        // chain rule: H(past, present) = H(present) + H(past | present)
        CHECK(hj == doctest::Approx(
                        hc + conditional_entropy(
                                 j, CondDirection::past_given_present))
                        .epsilon(1e-12));
        CHECK(hj == doctest::Approx(
                        hp + conditional_entropy(
                                 j, CondDirection::present_given_past))
                        .epsilon(1e-12));
        // data-processing sanity: I bounded by subset size in bits
        CHECK(mi <= static_cast<double>(subset.size()) + 1e-9);
    }
}

TEST_CASE("agreement with the string-keyed oracle") {
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = testgen::random_coupled_system(4, 300, 77 + trial);
        const std::vector<std::size_t> subset{0, 2, 3};
        const int tau = 1 + trial % 3;
        const auto j = joint_lag_distribution(m, subset, tau);
        CHECK(mutual_information(j) ==
              doctest::Approx(oracle::lagged_mi(m, subset, tau)).epsilon(1e-10));
        CHECK(past_entropy(j) ==
              doctest::Approx(oracle::past_state_entropy(m, subset, tau))
                  .epsilon(1e-10));
    }
}

TEST_CASE("plug-in MI converges to the analytic value for a known chain") {
    // Two-node chain: B_t = A_{t-1}, A fair coin. The stationary lag-1 joint
    // over (A, B) factorizes into A_past determining B_present; exact
    // enumeration gives I = 1 bit.
    const auto m = testgen::copy_system(100000, 1, 3);
    const std::vector<std::size_t> both{0, 1};
    const double mi = mutual_information(joint_lag_distribution(m, both, 1));
    CHECK(mi == doctest::Approx(1.0).epsilon(0.02));
}
