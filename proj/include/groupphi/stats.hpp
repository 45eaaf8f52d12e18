// Correlations, rank statistics, least squares with treatment contrasts,
// and the recording-hardware step adjustment.
#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "groupphi/errors.hpp"

namespace groupphi {

struct RegressionFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    double r_squared_adjusted = 0.0;
    Eigen::VectorXd residuals;
};

// Product-moment correlation; requires equal lengths >= 3 and nonzero
// variance on both sides.
double pearson_r(std::span<const double> x, std::span<const double> y);

// Tie-corrected tau-b, O(n log n) via merge counting. Degenerate inputs
// (all ties on either side) return 0.
double kendall_tau(std::span<const double> x, std::span<const double> y);

// Rank-sum z statistic under the normal approximation with tie-corrected
// variance; positive when b's ranks exceed a's.
double wilcoxon_z(std::span<const double> a, std::span<const double> b);

// Least squares on an explicit design matrix (intercept column included by
// the caller). Throws RankDeficientDesign when the design is not full rank
// or has too few observations.
RegressionFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

// Indicator columns for levels 1..n_levels-1 (level 0 is the reference).
Eigen::MatrixXd treatment_contrasts(std::span<const int> levels, int n_levels);

struct HardwareAdjustment {
    std::vector<double> adjusted; // post-break values shifted by -step
    RegressionFit fit;            // phi ~ intercept + date + step indicator
    double step_coefficient = 0.0;
};

// Fits phi ~ intercept + date + 1[date >= break_date] and removes the step
// from the post-break points. Pre-break points pass through unchanged.
HardwareAdjustment hardware_adjust(std::span<const double> dates,
                                   std::span<const double> phis,
                                   double break_date);

} // namespace groupphi
