// Synthetic system generators shared by the unit and acceptance suites.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "groupphi/graph_sampling.hpp"
#include "groupphi/state_matrix.hpp"

namespace testgen {

inline groupphi::StateMatrix fair_coins(std::size_t n_nodes, std::size_t t_steps,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> values(t_steps * n_nodes);
    for (auto& v : values) v = coin(rng) ? 1 : 0;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n_nodes; ++i)
        labels.push_back("n" + std::to_string(i));
    return groupphi::StateMatrix::from_raw(std::move(values), t_steps,
                                           std::move(labels));
}

// Node B copies node A with the given lag; A is a fair coin.
inline groupphi::StateMatrix copy_system(std::size_t t_steps, std::size_t lag,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> a(t_steps + lag);
    for (auto& v : a) v = coin(rng) ? 1 : 0;
    std::vector<std::uint8_t> values(t_steps * 2);
    for (std::size_t t = 0; t < t_steps; ++t) {
        values[2 * t] = a[t + lag];
        values[2 * t + 1] = a[t]; // B_t = A_{t-lag}
    }
    return groupphi::StateMatrix::from_raw(std::move(values), t_steps,
                                           {"A", "B"});
}

// Randomly coupled binary system: each node fires with probability
// sigmoid(bias + sum_j w_ij x_j(t-1)).
inline groupphi::StateMatrix random_coupled_system(std::size_t n_nodes,
                                                   std::size_t t_steps,
                                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(-2.0, 2.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::bernoulli_distribution sparse(0.5);

    std::vector<std::vector<double>> w(n_nodes, std::vector<double>(n_nodes, 0.0));
    std::vector<double> bias(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        bias[i] = 0.5 * weight(rng);
        for (std::size_t j = 0; j < n_nodes; ++j)
            if (sparse(rng)) w[i][j] = weight(rng);
    }

    std::vector<std::uint8_t> state(n_nodes);
    for (auto& s : state) s = unif(rng) < 0.5 ? 1 : 0;
    std::vector<std::uint8_t> values;
    values.reserve(t_steps * n_nodes);
    for (std::size_t t = 0; t < t_steps; ++t) {
        std::vector<std::uint8_t> next(n_nodes);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            double act = bias[i];
            for (std::size_t j = 0; j < n_nodes; ++j)
                if (state[j]) act += w[i][j];
            const double p = 1.0 / (1.0 + std::exp(-act));
            next[i] = unif(rng) < p ? 1 : 0;
        }
        state = next;
        values.insert(values.end(), state.begin(), state.end());
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n_nodes; ++i)
        labels.push_back("n" + std::to_string(i));
    return groupphi::StateMatrix::from_raw(std::move(values), t_steps,
                                           std::move(labels));
}

// Linear-Gaussian simulation x_t = A x_{t-1} + unit noise, rows = time.
inline Eigen::MatrixXd simulate_linear_system(const Eigen::MatrixXd& coupling,
                                              std::size_t t_steps,
                                              std::uint64_t seed,
                                              std::size_t burn_in = 1000) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const Eigen::Index n = coupling.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd out(t_steps, n);
    for (std::size_t t = 0; t < burn_in + t_steps; ++t) {
        Eigen::VectorXd e(n);
        for (Eigen::Index i = 0; i < n; ++i) e(i) = noise(rng);
        x = coupling * x + e;
        if (t >= burn_in) out.row(t - burn_in) = x.transpose();
    }
    return out;
}

// Poisson client requests answered by the paired server one latency later,
// with 20% uniform jitter so the reply is predictable but never an exact
// shifted copy; used for the delta sweep recovery check.
inline std::vector<groupphi::PacketRecord> request_response_packets(
    std::size_t n_pairs, double duration_s, double request_rate_hz,
    double latency_ms, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(request_rate_hz);
    std::uniform_real_distribution<double> jitter(0.8, 1.2);
    std::vector<groupphi::PacketRecord> packets;
    for (std::size_t p = 0; p < n_pairs; ++p) {
        const std::string client = "c" + std::to_string(p);
        const std::string server = "s" + std::to_string(p);
        double t = gap(rng);
        while (t < duration_s) {
            const auto t_us = static_cast<std::int64_t>(t * 1e6);
            packets.push_back({t_us, client, server});
            const auto reply_us =
                t_us +
                static_cast<std::int64_t>(latency_ms * jitter(rng) * 1000.0);
            packets.push_back({reply_us, server, client});
            t += gap(rng);
        }
    }
    std::sort(packets.begin(), packets.end(),
              [](const auto& a, const auto& b) {
                  return a.timestamp_us < b.timestamp_us;
              });
    return packets;
}

// Sparse random directed graph as a packet list (one packet per edge).
inline std::vector<groupphi::PacketRecord> random_graph_packets(
    std::size_t n_nodes, std::size_t n_edges, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n_nodes - 1);
    std::vector<groupphi::PacketRecord> packets;
    packets.reserve(n_edges);
    for (std::size_t e = 0; e < n_edges; ++e) {
        const std::size_t s = pick(rng);
        std::size_t d = pick(rng);
        if (d == s) d = (d + 1) % n_nodes;
        packets.push_back({static_cast<std::int64_t>(e),
                           "h" + std::to_string(s), "h" + std::to_string(d)});
    }
    return packets;
}

} // namespace testgen
