#include "groupphi/info_measures.hpp"

#include <cmath>

namespace groupphi {

namespace {

double entropy_of_values(const std::unordered_map<std::uint32_t, double>& table) {
    double h = 0.0;
    for (const auto& [state, p] : table)
        if (p > 0.0) h -= p * std::log2(p);
    return h < 0.0 ? 0.0 : h;
}

} // namespace

JointLagDistribution joint_lag_distribution(const StateMatrix& states,
                                            std::span<const std::size_t> subset,
                                            int tau) {
    if (subset.empty()) fail(Errc::EmptySubset, "subset must be non-empty");
    if (subset.size() > 32)
        fail(Errc::NodeCapExceeded, "subset of " + std::to_string(subset.size()) +
                                        " nodes exceeds the 32-node packing limit");
    const auto t_steps = static_cast<long>(states.steps());
    if (tau < 1 || tau > t_steps - 1)
        fail(Errc::TauOutOfRange, "tau " + std::to_string(tau) +
                                      " out of range for T = " +
                                      std::to_string(t_steps));

    JointLagDistribution joint;
    joint.subset.assign(subset.begin(), subset.end());
    joint.tau = tau;
    joint.sample_count = static_cast<std::size_t>(t_steps - tau);

    const double w = 1.0 / static_cast<double>(joint.sample_count);
    auto pack = [&](std::size_t row) {
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < subset.size(); ++i)
            bits |= static_cast<std::uint32_t>(states.at(row, subset[i])) << i;
        return bits;
    };
    for (long t = tau; t < t_steps; ++t) {
        const std::uint32_t past = pack(static_cast<std::size_t>(t - tau));
        const std::uint32_t present = pack(static_cast<std::size_t>(t));
        joint.table[JointLagDistribution::key(past, present)] += w;
    }
    return joint;
}

double entropy(std::span<const double> probs) {
    double sum = 0.0;
    for (double p : probs) sum += p;
    if (std::abs(sum - 1.0) > 1e-9)
        fail(Errc::UnnormalizedDistribution,
             "probabilities sum to " + std::to_string(sum));
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h < 0.0 ? 0.0 : h;
}

double joint_entropy(const JointLagDistribution& joint) {
    double h = 0.0;
    for (const auto& [key, p] : joint.table)
        if (p > 0.0) h -= p * std::log2(p);
    return h < 0.0 ? 0.0 : h;
}

double past_entropy(const JointLagDistribution& joint) {
    std::unordered_map<std::uint32_t, double> marginal;
    for (const auto& [key, p] : joint.table)
        marginal[JointLagDistribution::past_of(key)] += p;
    return entropy_of_values(marginal);
}

double present_entropy(const JointLagDistribution& joint) {
    std::unordered_map<std::uint32_t, double> marginal;
    for (const auto& [key, p] : joint.table)
        marginal[JointLagDistribution::present_of(key)] += p;
    return entropy_of_values(marginal);
}

double conditional_entropy(const JointLagDistribution& joint, CondDirection dir) {
    const double hj = joint_entropy(joint);
    const double hb = dir == CondDirection::past_given_present
                          ? present_entropy(joint)
                          : past_entropy(joint);
    const double h = hj - hb;
    return h < 0.0 ? 0.0 : h;
}

double mutual_information(const JointLagDistribution& joint) {
    return past_entropy(joint) + present_entropy(joint) - joint_entropy(joint);
}

} // namespace groupphi
