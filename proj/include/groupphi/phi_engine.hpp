// Phi computations: empirical phi with MIB search, Gaussian auto-regressive
// phi, atomic-partition phi, validity checks, stability correction, and
// subsample averaging.
#pragma once

#include <Eigen/Dense>
#include <span>

#include "groupphi/info_measures.hpp"
#include "groupphi/partition.hpp"
#include "groupphi/phi_result.hpp"
#include "groupphi/state_matrix.hpp"

namespace groupphi {

// Hard cap on exhaustive bipartition enumeration (2^(N-1) - 1 candidates).
inline constexpr std::size_t kDefaultBipartitionNodeCap = 16;

struct LaggedCovariance {
    Eigen::MatrixXd sigma;     // covariance over all T rows
    Eigen::MatrixXd sigma_lag; // cross-covariance Cov(x_{t-tau}, x_t)
    int tau = 1;
};

struct ResidualCovariance {
    Eigen::MatrixXd sigma_e; // covariance of present-given-past residuals
};

struct MibResult {
    Partition partition;
    PhiResult result;
};

// --- empirical route ------------------------------------------------------

// I(whole) - I(block1) - I(block2) at lag tau; may be negative away from
// the MIB due to estimation and is reported as-is.
double effective_information(const StateMatrix& states, int tau,
                             const Partition& bipartition);

// Enumerates all unordered bipartitions, minimizes ei / K with
// K = min of the two blocks' past-state entropies (K = 0 candidates are
// skipped), and reports unnormalized ei at the minimizer.
MibResult minimum_information_bipartition(
    const StateMatrix& states, int tau,
    std::size_t node_cap = kDefaultBipartitionNodeCap);

// --- Gaussian auto-regressive route --------------------------------------

LaggedCovariance lagged_covariances(const Eigen::MatrixXd& data,
                                    std::span<const std::size_t> subset, int tau);
LaggedCovariance lagged_covariances(const StateMatrix& states,
                                    std::span<const std::size_t> subset, int tau);

// sigma_e = sigma - sigma_lag^T pinv(sigma_past) sigma_lag, with a small
// ridge on the past block before inversion.
ResidualCovariance residual_covariance(const LaggedCovariance& cov);

// Phi_AR in bits on real-valued data; each part is regressed only on its
// own past. Throws SingularCovariance when any determinant degenerates.
double phi_autoregressive_bits(const Eigen::MatrixXd& data, int tau,
                               const Partition& partition);

PhiResult phi_autoregressive(const StateMatrix& states, int tau,
                             const Partition& partition);

// Phi_AR over the atomic partition (every node its own block).
PhiResult phi_atomic(const StateMatrix& states, int tau);

// MIB search over Phi_AR, same ei/K objective as the empirical route.
MibResult minimum_information_bipartition_ar(
    const StateMatrix& states, int tau,
    std::size_t node_cap = kDefaultBipartitionNodeCap);

// --- validity and correction ---------------------------------------------

// valid iff finite and -1e-9 <= value <= n_nodes.
bool validate_phi(double value_bits, std::size_t n_nodes);

// Drops max(1, floor(0.05 N)) least-variance nodes per retry until the
// requested phi computation returns a valid value.
PhiResult stabilized_phi(const StateMatrix& states, int tau, PhiMethod method);

struct PhiAverage {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n_valid = 0;
};

// Mean and standard error over the valid results only.
PhiAverage averaged_phi(std::span<const PhiResult> results);

// StateMatrix as a real-valued Eigen matrix (rows = time steps).
Eigen::MatrixXd to_real(const StateMatrix& states);

} // namespace groupphi
