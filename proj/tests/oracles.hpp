// Independent brute-force oracles. These deliberately avoid the library's
// bit-packing, caching, and O(n log n) shortcuts: string state keys,
// std::map tables, quadratic pair counting, explicit normal equations.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "groupphi/state_matrix.hpp"

namespace oracle {

inline std::string state_key(const groupphi::StateMatrix& m, std::size_t row,
                             std::span<const std::size_t> subset) {
    std::string k;
    for (std::size_t n : subset) k.push_back(m.at(row, n) ? '1' : '0');
    return k;
}

inline double entropy_of_counts(const std::map<std::string, int>& counts,
                                double total) {
    double h = 0.0;
    for (const auto& [key, c] : counts) {
        const double p = c / total;
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

inline double lagged_mi(const groupphi::StateMatrix& m,
                        std::span<const std::size_t> subset, int tau) {
    std::map<std::string, int> past, present, joint;
    const auto t_steps = static_cast<long>(m.steps());
    for (long t = tau; t < t_steps; ++t) {
        const std::string kp =
            state_key(m, static_cast<std::size_t>(t - tau), subset);
        const std::string kc = state_key(m, static_cast<std::size_t>(t), subset);
        past[kp]++;
        present[kc]++;
        joint[kp + "|" + kc]++;
    }
    const double total = static_cast<double>(t_steps - tau);
    return entropy_of_counts(past, total) + entropy_of_counts(present, total) -
           entropy_of_counts(joint, total);
}

inline double past_state_entropy(const groupphi::StateMatrix& m,
                                 std::span<const std::size_t> subset, int tau) {
    std::map<std::string, int> past;
    const auto t_steps = static_cast<long>(m.steps());
    for (long t = tau; t < t_steps; ++t)
        past[state_key(m, static_cast<std::size_t>(t - tau), subset)]++;
    return entropy_of_counts(past, static_cast<double>(t_steps - tau));
}

struct MibOracle {
    std::vector<std::size_t> block1;
    double phi = 0.0;
    bool found = false;
};

// Exhaustive re-enumeration of all unordered bipartitions, minimizing
// ei / min(H_past), skipping zero-entropy normalizations.
inline MibOracle brute_force_mib(const groupphi::StateMatrix& m, int tau) {
    const std::size_t n = m.nodes();
    std::vector<std::size_t> whole;
    for (std::size_t i = 0; i < n; ++i) whole.push_back(i);
    const double whole_mi = lagged_mi(m, whole, tau);

    MibOracle best;
    double best_norm = 1e300;
    // every subset containing node n-1 is "block 2"; its complement block 1
    for (std::size_t code = 1; code + 1 < (std::size_t{1} << n); ++code) {
        if (code & (std::size_t{1} << (n - 1))) continue; // unordered dedup
        std::vector<std::size_t> b1, b2;
        for (std::size_t i = 0; i < n; ++i)
            ((code >> i) & 1 ? b1 : b2).push_back(i);
        if (b1.empty() || b2.empty()) continue;
        const double h1 = past_state_entropy(m, b1, tau);
        const double h2 = past_state_entropy(m, b2, tau);
        const double k = std::min(h1, h2);
        if (k <= 1e-12) continue;
        const double ei = whole_mi - lagged_mi(m, b1, tau) - lagged_mi(m, b2, tau);
        const double norm = ei / k;
        if (!best.found || norm < best_norm - 1e-15) {
            best_norm = norm;
            best.phi = ei;
            best.block1 = b1;
            best.found = true;
        }
    }
    return best;
}

// Quadratic concordant/discordant pair counting with tie correction.
inline double kendall_tau_pairs(std::span<const double> x,
                                std::span<const double> y) {
    const std::size_t n = x.size();
    double concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0)
                ties_x++;
            else if (dy == 0.0)
                ties_y++;
            else if (dx * dy > 0.0)
                concordant++;
            else
                discordant++;
        }
    const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
    double tx = 0, ty = 0;
    // recompute total tie-pair counts (including double ties) per axis
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (x[i] == x[j]) tx++;
            if (y[i] == y[j]) ty++;
        }
    const double denom = std::sqrt((n0 - tx) * (n0 - ty));
    if (denom <= 0.0) return 0.0;
    return (concordant - discordant) / denom;
}

// Direct rank-sum z with average ranks and tie-corrected variance.
inline double wilcoxon_z_direct(std::span<const double> a,
                                std::span<const double> b) {
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    const std::size_t n = all.size();
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        double below = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (all[j] < all[i]) below++;
            if (all[j] == all[i]) equal++;
        }
        ranks[i] = below + (equal + 1.0) / 2.0;
    }
    double rb = 0.0;
    for (std::size_t i = a.size(); i < n; ++i) rb += ranks[i];
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double nn = static_cast<double>(n);
    std::map<double, int> groups;
    for (double v : all) groups[v]++;
    double tie = 0.0;
    for (const auto& [v, c] : groups)
        tie += static_cast<double>(c) * c * c - c;
    const double var =
        na * nb / 12.0 * ((nn + 1.0) - tie / (nn * (nn - 1.0)));
    if (var <= 0.0) return 0.0;
    return (rb - nb * (nn + 1.0) / 2.0) / std::sqrt(var);
}

// Normal-equations least squares via explicit pseudo-inverse.
inline Eigen::VectorXd normal_equations_fit(const Eigen::MatrixXd& design,
                                            const Eigen::VectorXd& y) {
    const Eigen::MatrixXd xtx = design.transpose() * design;
    return xtx.completeOrthogonalDecomposition().pseudoInverse() *
           design.transpose() * y;
}

} // namespace oracle
