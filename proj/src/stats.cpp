#include "groupphi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace groupphi {

double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        fail(Errc::LengthMismatch, "pearson_r: " + std::to_string(x.size()) +
                                       " vs " + std::to_string(y.size()));
    const auto n = static_cast<double>(x.size());
    if (x.size() < 3)
        fail(Errc::LengthMismatch, "pearson_r needs at least 3 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        fail(Errc::ZeroVariance, "pearson_r input has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// Number of inversions in v, counted by merge sort.
std::uint64_t count_inversions(std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n < 2) return 0;
    std::vector<double> buf(n);
    std::uint64_t swaps = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (v[j] < v[i]) {
                    swaps += mid - i;
                    buf[k++] = v[j++];
                } else {
                    buf[k++] = v[i++];
                }
            }
            while (i < mid) buf[k++] = v[i++];
            while (j < hi) buf[k++] = v[j++];
            std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
        }
    }
    return swaps;
}

// sum over tie groups of t*(t-1)/2, for an already sorted sequence under cmp.
template <typename It, typename Eq>
std::uint64_t tie_pairs(It begin, It end, Eq eq) {
    std::uint64_t total = 0;
    auto it = begin;
    while (it != end) {
        auto run = it;
        std::uint64_t t = 0;
        while (run != end && eq(*it, *run)) {
            ++run;
            ++t;
        }
        total += t * (t - 1) / 2;
        it = run;
    }
    return total;
}

// Average ranks (1-based, ties share the mean rank) for the combined sample.
std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j - 1) + 1.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

} // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        fail(Errc::LengthMismatch, "kendall_tau: " + std::to_string(x.size()) +
                                       " vs " + std::to_string(y.size()));
    if (x.size() < 2)
        fail(Errc::LengthMismatch, "kendall_tau needs at least 2 observations");

    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    std::vector<std::pair<double, double>> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = {x[order[i]], y[order[i]]};

    const std::uint64_t n0 =
        static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t n1 = tie_pairs(
        sorted.begin(), sorted.end(),
        [](const auto& a, const auto& b) { return a.first == b.first; });
    const std::uint64_t n3 = tie_pairs(
        sorted.begin(), sorted.end(),
        [](const auto& a, const auto& b) { return a == b; });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = sorted[i].second;
    const std::uint64_t discordant = count_inversions(ys);

    std::sort(ys.begin(), ys.end());
    const std::uint64_t n2 =
        tie_pairs(ys.begin(), ys.end(), std::equal_to<double>{});

    // C + D = n0 - n1 - n2 + n3, C - D = (C + D) - 2D
    const double cd = static_cast<double>(n0 - n1 - n2 + n3) -
                      2.0 * static_cast<double>(discordant);
    const double denom =
        std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
    if (denom <= 0.0) return 0.0;
    return cd / denom;
}

double wilcoxon_z(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        fail(Errc::EmptySample, "wilcoxon_z requires two non-empty samples");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;

    std::vector<double> combined;
    combined.reserve(n);
    combined.insert(combined.end(), a.begin(), a.end());
    combined.insert(combined.end(), b.begin(), b.end());
    const auto ranks = average_ranks(combined);

    double rank_sum_b = 0.0;
    for (std::size_t i = na; i < n; ++i) rank_sum_b += ranks[i];

    const double mean_b =
        static_cast<double>(nb) * static_cast<double>(n + 1) / 2.0;

    // Tie correction: sum of t^3 - t over tie groups.
    std::vector<double> sorted = combined;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double nn = static_cast<double>(n);
    const double variance =
        (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
        ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (variance <= 0.0) return 0.0;
    return (rank_sum_b - mean_b) / std::sqrt(variance);
}

RegressionFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
    const Eigen::Index m = design.rows();
    const Eigen::Index p = design.cols();
    if (y.size() != m)
        fail(Errc::LengthMismatch, "response length does not match design rows");
    if (m <= p)
        fail(Errc::RankDeficientDesign,
             "need more observations than predictors");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p)
        fail(Errc::RankDeficientDesign, "design matrix is rank deficient");

    RegressionFit fit;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - design * fit.coefficients;

    const double ssr = fit.residuals.squaredNorm();
    const double sigma2 = ssr / static_cast<double>(m - p);
    const Eigen::MatrixXd xtx_inv =
        (design.transpose() * design).ldlt().solve(
            Eigen::MatrixXd::Identity(p, p));
    fit.standard_errors = (sigma2 * xtx_inv.diagonal()).cwiseMax(0.0).cwiseSqrt();

    const double mean_y = y.mean();
    const double sst = (y.array() - mean_y).square().sum();
    const double r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    fit.r_squared_adjusted =
        1.0 - (1.0 - r2) * static_cast<double>(m - 1) / static_cast<double>(m - p);
    return fit;
}

Eigen::MatrixXd treatment_contrasts(std::span<const int> levels, int n_levels) {
    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(levels.size()), n_levels - 1);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const int lvl = levels[i];
        if (lvl < 0 || lvl >= n_levels)
            fail(Errc::ParseError, "level " + std::to_string(lvl) +
                                       " out of range");
        if (lvl > 0) cols(static_cast<Eigen::Index>(i), lvl - 1) = 1.0;
    }
    return cols;
}

HardwareAdjustment hardware_adjust(std::span<const double> dates,
                                   std::span<const double> phis,
                                   double break_date) {
    if (dates.size() != phis.size())
        fail(Errc::LengthMismatch, "dates and phi series differ in length");
    if (dates.empty()) fail(Errc::EmptySample, "empty series");
    const auto [min_it, max_it] = std::minmax_element(dates.begin(), dates.end());
    if (break_date <= *min_it || break_date > *max_it)
        fail(Errc::BreakOutOfRange, "break date lies outside the date range");

    const auto m = static_cast<Eigen::Index>(dates.size());
    Eigen::MatrixXd design(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = dates[i];
        design(i, 2) = dates[i] >= break_date ? 1.0 : 0.0;
        y(i) = phis[i];
    }

    HardwareAdjustment out;
    out.fit = ols_fit(design, y);
    out.step_coefficient = out.fit.coefficients(2);
    out.adjusted.assign(phis.begin(), phis.end());
    for (std::size_t i = 0; i < out.adjusted.size(); ++i)
        if (dates[i] >= break_date) out.adjusted[i] -= out.step_coefficient;
    return out;
}

} // namespace groupphi
