// Plug-in estimation of lagged joint distributions and the entropy /
// mutual-information quantities built on them. All values in bits.
#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "groupphi/state_matrix.hpp"

namespace groupphi {

// Bit-packed subset states: past in the high 32 bits, present in the low 32.
// Subsets are limited to 32 nodes (the MIB search caps out far below that).
struct JointLagDistribution {
    std::vector<std::size_t> subset;
    int tau = 1;
    std::unordered_map<std::uint64_t, double> table;
    std::size_t sample_count = 0; // T - tau

    static std::uint64_t key(std::uint32_t past, std::uint32_t present) {
        return (static_cast<std::uint64_t>(past) << 32) | present;
    }
    static std::uint32_t past_of(std::uint64_t k) {
        return static_cast<std::uint32_t>(k >> 32);
    }
    static std::uint32_t present_of(std::uint64_t k) {
        return static_cast<std::uint32_t>(k & 0xffffffffu);
    }
};

enum class CondDirection { past_given_present, present_given_past };

JointLagDistribution joint_lag_distribution(const StateMatrix& states,
                                            std::span<const std::size_t> subset,
                                            int tau);

// H = -sum p log2 p over an explicit probability table; probabilities must
// sum to 1 within 1e-9.
double entropy(std::span<const double> probs);

double joint_entropy(const JointLagDistribution& joint);
double past_entropy(const JointLagDistribution& joint);
double present_entropy(const JointLagDistribution& joint);

double conditional_entropy(const JointLagDistribution& joint, CondDirection dir);

// I = H(past) + H(present) - H(past, present)
double mutual_information(const JointLagDistribution& joint);

} // namespace groupphi
