#include "groupphi/phi_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace groupphi {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_tau(const StateMatrix& states, int tau) {
    const auto t_steps = static_cast<long>(states.steps());
    if (tau < 1 || tau > t_steps - 1)
        fail(Errc::TauOutOfRange, "tau " + std::to_string(tau) +
                                      " out of range for T = " +
                                      std::to_string(t_steps));
}

void check_bipartition(const Partition& p, std::size_t n_nodes) {
    if (!p.is_bipartition() || p.n_nodes() != n_nodes)
        fail(Errc::InvalidPartition,
             "expected a 2-block partition over " + std::to_string(n_nodes) +
                 " nodes, got " + p.to_string());
}

// log det of a symmetric positive-definite matrix via Cholesky; throws
// SingularCovariance on failure or non-finite result.
double logdet_spd(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        fail(Errc::SingularCovariance, "covariance is not positive definite");
    double ld = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double d = l(i, i);
        if (!(d > 0.0) || !std::isfinite(d))
            fail(Errc::SingularCovariance, "degenerate covariance pivot");
        ld += std::log(d);
    }
    return 2.0 * ld;
}

// 0.5 * log(det sigma / det sigma_e) in nats for one node subset.
double ar_information_nats(const Eigen::MatrixXd& data,
                           std::span<const std::size_t> subset, int tau) {
    const LaggedCovariance cov = lagged_covariances(data, subset, tau);
    const ResidualCovariance res = residual_covariance(cov);
    const double term = 0.5 * (logdet_spd(cov.sigma) - logdet_spd(res.sigma_e));
    if (!std::isfinite(term))
        fail(Errc::SingularCovariance, "non-finite AR information term");
    return term;
}

std::vector<std::size_t> all_nodes(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

std::vector<std::size_t> mask_to_subset(std::uint32_t mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) out.push_back(i);
    return out;
}

// Shared MIB enumeration: block_value(mask) returns the per-block term,
// block_past_entropy(mask) the normalization component. Returns the chosen
// block-1 mask, or throws when every candidate is degenerate.
template <typename ValueFn, typename EntropyFn>
std::uint32_t enumerate_mib(std::size_t n, ValueFn&& block_value,
                            EntropyFn&& block_past_entropy, double whole_value,
                            double* best_ei_out) {
    const std::uint32_t full = (n == 32) ? 0xffffffffu
                                         : ((1u << n) - 1u);
    bool found = false;
    bool any_candidate = false;
    double best_norm = std::numeric_limits<double>::infinity();
    double best_ei = 0.0;
    std::uint32_t best_mask = 0;
    // Node 0 fixed in block 1; iterate memberships of nodes 1..n-1.
    const std::uint32_t limit = 1u << (n - 1);
    for (std::uint32_t m = 0; m + 1 < limit; ++m) {
        const std::uint32_t mask1 = 1u | (m << 1);
        const std::uint32_t mask2 = full & ~mask1;
        const double h1 = block_past_entropy(mask1);
        const double h2 = block_past_entropy(mask2);
        const double k = std::min(h1, h2);
        if (k <= 1e-12) continue; // degenerate normalization, skip
        any_candidate = true;
        double v1, v2;
        try {
            v1 = block_value(mask1);
            v2 = block_value(mask2);
        } catch (const Error& e) {
            if (e.code() == Errc::SingularCovariance) continue;
            throw;
        }
        const double ei = whole_value - v1 - v2;
        const double norm = ei / k;
        if (norm < best_norm - 1e-15) {
            best_norm = norm;
            best_ei = ei;
            best_mask = mask1;
            found = true;
        }
    }
    if (!any_candidate)
        fail(Errc::AllBipartitionsDegenerate,
             "every bipartition had a zero-entropy block");
    if (!found)
        fail(Errc::SingularCovariance,
             "no bipartition admitted a finite phi value");
    *best_ei_out = best_ei;
    return best_mask;
}

} // namespace

const char* phi_method_name(PhiMethod m) {
    switch (m) {
    case PhiMethod::empirical: return "empirical";
    case PhiMethod::autoregressive: return "autoregressive";
    case PhiMethod::atomic: return "atomic";
    }
    return "unknown";
}

Eigen::MatrixXd to_real(const StateMatrix& states) {
    Eigen::MatrixXd m(states.steps(), states.nodes());
    for (std::size_t t = 0; t < states.steps(); ++t)
        for (std::size_t n = 0; n < states.nodes(); ++n)
            m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(n)) =
                states.at(t, n);
    return m;
}

double effective_information(const StateMatrix& states, int tau,
                             const Partition& bipartition) {
    check_tau(states, tau);
    check_bipartition(bipartition, states.nodes());
    const auto whole = all_nodes(states.nodes());
    double ei = mutual_information(joint_lag_distribution(states, whole, tau));
    for (const auto& block : bipartition.blocks())
        ei -= mutual_information(joint_lag_distribution(states, block, tau));
    return ei;
}

MibResult minimum_information_bipartition(const StateMatrix& states, int tau,
                                          std::size_t node_cap) {
    check_tau(states, tau);
    const std::size_t n = states.nodes();
    if (n < 2)
        fail(Errc::InvalidPartition, "need at least 2 nodes for a bipartition");
    if (n > node_cap)
        fail(Errc::NodeCapExceeded,
             std::to_string(n) + " nodes exceeds bipartition cap of " +
                 std::to_string(node_cap));

    const auto whole = all_nodes(n);
    const double whole_mi =
        mutual_information(joint_lag_distribution(states, whole, tau));

    struct SubsetInfo {
        double mi;
        double h_past;
    };
    std::unordered_map<std::uint32_t, SubsetInfo> cache;
    auto info_for = [&](std::uint32_t mask) -> const SubsetInfo& {
        auto it = cache.find(mask);
        if (it == cache.end()) {
            const auto subset = mask_to_subset(mask, n);
            const auto joint = joint_lag_distribution(states, subset, tau);
            it = cache.emplace(mask, SubsetInfo{mutual_information(joint),
                                                past_entropy(joint)})
                     .first;
        }
        return it->second;
    };

    double best_ei = 0.0;
    const std::uint32_t best_mask = enumerate_mib(
        n, [&](std::uint32_t mask) { return info_for(mask).mi; },
        [&](std::uint32_t mask) { return info_for(mask).h_past; }, whole_mi,
        &best_ei);

    MibResult out{Partition::bipartition_from_mask(best_mask, n), PhiResult{}};
    out.result.value = best_ei;
    out.result.method = PhiMethod::empirical;
    out.result.partition = out.partition;
    out.result.tau = tau;
    out.result.valid = validate_phi(best_ei, n);
    return out;
}

LaggedCovariance lagged_covariances(const Eigen::MatrixXd& data,
                                    std::span<const std::size_t> subset,
                                    int tau) {
    if (subset.empty()) fail(Errc::EmptySubset, "subset must be non-empty");
    const auto t_steps = data.rows();
    if (tau < 1 || tau > t_steps - 1)
        fail(Errc::TauOutOfRange, "tau " + std::to_string(tau) +
                                      " out of range for T = " +
                                      std::to_string(t_steps));
    const auto k = static_cast<Eigen::Index>(subset.size());
    Eigen::MatrixXd cols(t_steps, k);
    for (Eigen::Index j = 0; j < k; ++j)
        cols.col(j) = data.col(static_cast<Eigen::Index>(subset[j]));
    const Eigen::RowVectorXd mean = cols.colwise().mean();
    cols.rowwise() -= mean;

    LaggedCovariance out;
    out.tau = tau;
    out.sigma = (cols.transpose() * cols) / static_cast<double>(t_steps);
    const Eigen::Index pairs = t_steps - tau;
    out.sigma_lag = (cols.topRows(pairs).transpose() * cols.bottomRows(pairs)) /
                    static_cast<double>(pairs);
    out.sigma = 0.5 * (out.sigma + out.sigma.transpose().eval());
    return out;
}

LaggedCovariance lagged_covariances(const StateMatrix& states,
                                    std::span<const std::size_t> subset,
                                    int tau) {
    return lagged_covariances(to_real(states), subset, tau);
}

ResidualCovariance residual_covariance(const LaggedCovariance& cov) {
    const Eigen::Index n = cov.sigma.rows();
    Eigen::MatrixXd past = cov.sigma;
    const double ridge = 1e-10 * past.trace() / static_cast<double>(n);
    past.diagonal().array() += ridge;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(past);
    if (ldlt.info() != Eigen::Success)
        fail(Errc::SingularCovariance, "past covariance factorization failed");
    const Eigen::MatrixXd solved = ldlt.solve(cov.sigma_lag);
    if (!solved.allFinite())
        fail(Errc::SingularCovariance, "past covariance is singular");

    ResidualCovariance out;
    out.sigma_e = cov.sigma - cov.sigma_lag.transpose() * solved;
    out.sigma_e = 0.5 * (out.sigma_e + out.sigma_e.transpose().eval());
    return out;
}

double phi_autoregressive_bits(const Eigen::MatrixXd& data, int tau,
                               const Partition& partition) {
    if (partition.n_nodes() != static_cast<std::size_t>(data.cols()))
        fail(Errc::InvalidPartition, "partition does not cover the data columns");
    const auto whole = all_nodes(static_cast<std::size_t>(data.cols()));
    double nats = ar_information_nats(data, whole, tau);
    for (const auto& block : partition.blocks())
        nats -= ar_information_nats(data, block, tau);
    return nats / kLn2;
}

PhiResult phi_autoregressive(const StateMatrix& states, int tau,
                             const Partition& partition) {
    check_tau(states, tau);
    PhiResult r;
    r.value = phi_autoregressive_bits(to_real(states), tau, partition);
    r.method = PhiMethod::autoregressive;
    r.partition = partition;
    r.tau = tau;
    r.valid = validate_phi(r.value, states.nodes());
    return r;
}

PhiResult phi_atomic(const StateMatrix& states, int tau) {
    if (states.nodes() < 2)
        fail(Errc::InvalidPartition, "atomic phi needs at least 2 nodes");
    PhiResult r = phi_autoregressive(states, tau, Partition::atomic(states.nodes()));
    r.method = PhiMethod::atomic;
    return r;
}

MibResult minimum_information_bipartition_ar(const StateMatrix& states, int tau,
                                             std::size_t node_cap) {
    check_tau(states, tau);
    const std::size_t n = states.nodes();
    if (n < 2)
        fail(Errc::InvalidPartition, "need at least 2 nodes for a bipartition");
    if (n > node_cap)
        fail(Errc::NodeCapExceeded,
             std::to_string(n) + " nodes exceeds bipartition cap of " +
                 std::to_string(node_cap));

    const Eigen::MatrixXd data = to_real(states);
    const auto whole = all_nodes(n);
    const double whole_nats = ar_information_nats(data, whole, tau);

    std::unordered_map<std::uint32_t, double> value_cache;   // nats
    std::unordered_map<std::uint32_t, double> entropy_cache; // bits
    auto block_value = [&](std::uint32_t mask) {
        auto it = value_cache.find(mask);
        if (it == value_cache.end()) {
            const auto subset = mask_to_subset(mask, n);
            it = value_cache.emplace(mask, ar_information_nats(data, subset, tau))
                     .first;
        }
        return it->second;
    };
    auto block_past_entropy = [&](std::uint32_t mask) {
        auto it = entropy_cache.find(mask);
        if (it == entropy_cache.end()) {
            const auto subset = mask_to_subset(mask, n);
            it = entropy_cache
                     .emplace(mask, past_entropy(joint_lag_distribution(
                                        states, subset, tau)))
                     .first;
        }
        return it->second;
    };

    double best_nats = 0.0;
    const std::uint32_t best_mask = enumerate_mib(
        n, block_value, block_past_entropy, whole_nats, &best_nats);

    MibResult out{Partition::bipartition_from_mask(best_mask, n), PhiResult{}};
    out.result.value = best_nats / kLn2;
    out.result.method = PhiMethod::autoregressive;
    out.result.partition = out.partition;
    out.result.tau = tau;
    out.result.valid = validate_phi(out.result.value, n);
    return out;
}

bool validate_phi(double value_bits, std::size_t n_nodes) {
    return std::isfinite(value_bits) && value_bits >= -1e-9 &&
           value_bits <= static_cast<double>(n_nodes);
}

PhiResult stabilized_phi(const StateMatrix& states, int tau, PhiMethod method) {
    check_tau(states, tau);
    if (states.nodes() < 2)
        fail(Errc::InvalidPartition, "need at least 2 nodes");

    StateMatrix current = states;
    std::vector<std::string> dropped;
    int retries = 0;

    while (current.nodes() >= 2) {
        bool computation_failed = false;
        PhiResult r;
        try {
            switch (method) {
            case PhiMethod::empirical:
                r = minimum_information_bipartition(current, tau).result;
                break;
            case PhiMethod::autoregressive:
                r = minimum_information_bipartition_ar(current, tau).result;
                break;
            case PhiMethod::atomic:
                r = phi_atomic(current, tau);
                break;
            }
        } catch (const Error& e) {
            if (e.code() != Errc::SingularCovariance &&
                e.code() != Errc::AllBipartitionsDegenerate)
                throw;
            computation_failed = true;
        }
        if (!computation_failed && r.valid) {
            r.dropped_nodes = dropped;
            r.retries = retries;
            return r;
        }

        // Drop the 5% (of the current node count, minimum 1) least-variance
        // nodes; ties broken toward the lowest node index.
        const std::size_t n = current.nodes();
        const std::size_t n_drop =
            std::max<std::size_t>(1, static_cast<std::size_t>(0.05 * n));
        if (n - n_drop < 2) break;
        const auto variances = current.column_variances();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return variances[a] < variances[b];
                         });
        std::vector<char> drop(n, 0);
        for (std::size_t i = 0; i < n_drop; ++i) {
            drop[order[i]] = 1;
            dropped.push_back(current.node_labels()[order[i]]);
        }
        std::vector<std::size_t> keep;
        keep.reserve(n - n_drop);
        for (std::size_t i = 0; i < n; ++i)
            if (!drop[i]) keep.push_back(i);
        current = current.select_nodes(keep);
        ++retries;
    }
    fail(Errc::ExhaustedNodes,
         "stability correction ran out of nodes without a valid phi");
}

PhiAverage averaged_phi(std::span<const PhiResult> results) {
    PhiAverage out;
    double sum = 0.0;
    for (const auto& r : results)
        if (r.valid) {
            sum += r.value;
            ++out.n_valid;
        }
    if (out.n_valid == 0)
        fail(Errc::NoValidResults, "no valid phi results to average");
    out.mean = sum / static_cast<double>(out.n_valid);
    if (out.n_valid > 1) {
        double ss = 0.0;
        for (const auto& r : results)
            if (r.valid) ss += (r.value - out.mean) * (r.value - out.mean);
        const double var = ss / static_cast<double>(out.n_valid - 1);
        out.stderr_ = std::sqrt(var / static_cast<double>(out.n_valid));
    }
    return out;
}

} // namespace groupphi
