#include "qnv/estimate.hpp"

#include "qnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace qnv {

std::size_t resolve_steps(const McParams& mc, double T) {
    QNV_REQUIRE(T > 0.0 && std::isfinite(T), DomainError, "horizon T must be positive");
    if (mc.n_steps > 0)
        return mc.n_steps;
    return static_cast<std::size_t>(std::max(1.0, std::ceil(512.0 * T)));
}

void check_budget(const McParams& mc, double steps_per_path) {
    QNV_REQUIRE(mc.n_paths >= 2, DomainError, "need at least two paths");
    const double work = static_cast<double>(mc.n_paths) * steps_per_path;
    if (work > mc.step_budget)
        throw Error(ErrorKind::ResourceError,
                    fmt::format("{} path steps exceed the budget of {}", work, mc.step_budget));
}

double pairwise_sum(std::span<const double> xs) noexcept {
    constexpr std::size_t kBlock = 128;
    if (xs.size() <= kBlock) {
        double s = 0.0;
        for (double x : xs)
            s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace {

PriceEstimate finish(double mean, double variance, std::size_t n, std::uint64_t seed,
                     std::string estimator) {
    PriceEstimate e;
    e.mean = mean;
    e.std_error = std::sqrt(std::max(variance, 0.0) / static_cast<double>(n));
    e.ci95_lo = mean - 1.96 * e.std_error;
    e.ci95_hi = mean + 1.96 * e.std_error;
    e.n_paths = n;
    e.seed = seed;
    e.estimator = std::move(estimator);
    return e;
}

double sample_variance(std::span<const double> xs, double mean) {
    std::vector<double> sq(xs.size());
    std::transform(xs.begin(), xs.end(), sq.begin(), [mean](double x) { return (x - mean) * (x - mean); });
    return pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
}

} // namespace

PriceEstimate summarize(std::span<const double> samples, std::uint64_t seed, std::string estimator) {
    QNV_REQUIRE(samples.size() >= 2, DomainError, "need at least two samples");
    const double mean = pairwise_sum(samples) / static_cast<double>(samples.size());
    return finish(mean, sample_variance(samples, mean), samples.size(), seed, std::move(estimator));
}

double control_coefficient(std::span<const double> y, std::span<const double> w) {
    const std::size_t n = y.size();
    const double my = pairwise_sum(y) / static_cast<double>(n);
    const double mw = pairwise_sum(w) / static_cast<double>(n);
    std::vector<double> cov(n), var(n);
    for (std::size_t i = 0; i < n; ++i) {
        cov[i] = (y[i] - my) * (w[i] - mw);
        var[i] = (w[i] - mw) * (w[i] - mw);
    }
    const double v = pairwise_sum(var);
    if (!(v > 0.0))
        return 0.0;
    return pairwise_sum(cov) / v;
}

PriceEstimate summarize_weighted(std::span<const double> hw, std::span<const double> w, bool control,
                                 std::uint64_t seed, std::string estimator) {
    QNV_REQUIRE(hw.size() == w.size(), DomainError, "sample size mismatch");
    if (!control)
        return summarize(hw, seed, std::move(estimator));
    const double beta = control_coefficient(hw, w);
    std::vector<double> adjusted(hw.size());
    for (std::size_t i = 0; i < hw.size(); ++i)
        adjusted[i] = hw[i] - beta * (w[i] - 1.0);
    return summarize(adjusted, seed, std::move(estimator));
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

double z_score(const PriceEstimate& a, const PriceEstimate& b) noexcept {
    const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    if (se == 0.0)
        return a.mean == b.mean ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a.mean - b.mean) / se;
}

} // namespace qnv
