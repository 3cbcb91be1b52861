#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qnv {

struct PriceEstimate {
    double mean = 0.0;
    double std_error = 0.0;   ///< sample standard deviation / sqrt(n)
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    std::string estimator;    ///< "transform", "euler" or "gbm-dual"
};

/// Monte Carlo controls shared by all estimators.
struct McParams {
    std::size_t n_paths = 100000;
    /// Total grid steps over [0, T]; 0 selects 512 per unit of T.
    std::size_t n_steps = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Regress the payoff on the unit-mean density weight (transform and gbm-dual estimators).
    bool weight_control = true;
    /// Upper bound on n_paths * n_steps.
    double step_budget = 5e10;
};

std::size_t resolve_steps(const McParams& mc, double T);
void check_budget(const McParams& mc, double steps_per_path);

/// Pairwise summation; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> xs) noexcept;

/// Mean / standard error of i.i.d. samples.
PriceEstimate summarize(std::span<const double> samples, std::uint64_t seed, std::string estimator);

/// Estimate of E[h w] using E[w] = 1 as a control: samples h_i w_i - beta (w_i - 1)
/// with the sample-optimal beta. Falls back to the plain mean when disabled.
PriceEstimate summarize_weighted(std::span<const double> payoff_times_weight,
                                 std::span<const double> weight, bool control, std::uint64_t seed,
                                 std::string estimator);

/// Sample-optimal control coefficient cov(y, w) / var(w) (0 when w is constant).
double control_coefficient(std::span<const double> y, std::span<const double> w);

/// Runs body(i) for i in [0, n) split into contiguous blocks over `threads` workers.
/// Bodies must only write to per-index storage. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// |a - b| / sqrt(se_a^2 + se_b^2)
double z_score(const PriceEstimate& a, const PriceEstimate& b) noexcept;

} // namespace qnv
