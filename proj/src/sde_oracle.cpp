#include "qnv/sde_oracle.hpp"

#include "qnv/errors.hpp"
#include "qnv/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include <boost/random/normal_distribution.hpp>

namespace qnv {

namespace {

double volatility(const PolynomialSpec& p, double y) noexcept { return (p.e1 * y + p.e2) * y + p.e3; }

struct EulerPathState {
    bool absorbed = false;
    bool exploded = false;
    double absorption_time = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

} // namespace

std::vector<double> euler_path(const PolynomialSpec& spec, std::span<const double> increments,
                               bool absorb_at_zero) {
    validate(spec);
    std::vector<double> y(increments.size() + 1);
    y[0] = spec.y0;
    bool absorbed = false;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        if (absorbed) {
            y[i + 1] = 0.0;
            continue;
        }
        double next = y[i] + volatility(spec, y[i]) * increments[i];
        if (absorb_at_zero && next <= 0.0) {
            next = 0.0;
            absorbed = true;
        }
        y[i + 1] = next;
    }
    return y;
}

EulerReport euler_run(const PolynomialSpec& spec, const ClaimSpec& claim, const EulerParams& params) {
    validate(spec);
    QNV_REQUIRE(claim.T > 0.0 && std::isfinite(claim.T), DomainError, "horizon T must be positive");
    QNV_REQUIRE(params.dt > 0.0 && params.dt <= claim.T, DomainError, "need 0 < dt <= T");
    QNV_REQUIRE(static_cast<bool>(claim.dollar), InvalidSpec, "claim has no dollar payoff");
    const double cap = params.cap > 0.0 ? params.cap : 1e6 * std::max(1.0, spec.y0);
    QNV_REQUIRE(cap >= 10.0 * spec.y0, DomainError, "cap must be at least 10 y0");

    const std::size_t n = static_cast<std::size_t>(std::ceil(claim.T / params.dt - 1e-9));
    const double h = claim.T / static_cast<double>(n);
    const double sqh = std::sqrt(h);
    McParams budget;
    budget.n_paths = params.n_paths;
    budget.step_budget = params.step_budget;
    check_budget(budget, static_cast<double>(n));

    std::vector<double> times(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        times[j] = h * static_cast<double>(j);
    times[n] = claim.T;

    std::vector<double> payoff(params.n_paths, 0.0);
    std::vector<unsigned char> flags(params.n_paths, 0);  // bit 0 exploded, bit 1 absorbed
    const double eta = params.max_relative_move;

    parallel_for(params.n_paths, params.threads, [&](std::size_t path) {
        thread_local std::vector<double> values;
        values.resize(n + 1);
        auto rng = path_stream(params.seed, StreamSalt::EulerOracle, path);
        boost::random::normal_distribution<double> normal;
        EulerPathState st;
        double y = spec.y0;
        st.lo = st.hi = y;
        values[0] = y;
        for (std::size_t j = 0; j < n; ++j) {
            if (!st.absorbed && !st.exploded) {
                double remaining = h;
                std::size_t substeps = 0;
                while (remaining > 0.0) {
                    const double vol = volatility(spec, y);
                    double step = remaining;
                    if (eta > 0.0 && std::abs(vol) * std::sqrt(step) > eta * std::max(1.0, std::abs(y))) {
                        const double r = eta * std::max(1.0, std::abs(y)) / std::abs(vol);
                        step = std::min(remaining, r * r);
                    }
                    const double sq = step == h ? sqh : std::sqrt(step);
                    const double next = y + vol * sq * normal(rng);
                    if (params.absorb_at_zero && next <= 0.0) {
                        // linear interpolation of the crossing inside the substep
                        const double frac = y / (y - next);
                        st.absorption_time = times[j] + (h - remaining) + frac * step;
                        st.absorbed = true;
                        y = 0.0;
                        break;
                    }
                    y = next;
                    remaining = step == remaining ? 0.0 : remaining - step;
                    st.lo = std::min(st.lo, y);
                    st.hi = std::max(st.hi, y);
                    if (std::abs(y) >= cap || ++substeps > params.max_substeps) {
                        st.exploded = true;
                        y = std::copysign(cap, y);
                        break;
                    }
                }
                st.lo = std::min(st.lo, y);
                st.hi = std::max(st.hi, y);
            }
            values[j + 1] = y;
        }
        flags[path] = static_cast<unsigned char>((st.exploded ? 1 : 0) | (st.absorbed ? 2 : 0));
        if (st.exploded && params.explosion == EulerParams::Explosion::Kill)
            return;
        const PathView view{times, values, st.lo, st.hi};
        const double v = claim.dollar(view);
        if (std::isnan(v))
            throw Error(ErrorKind::NonFinitePayoff, "payoff returned NaN");
        if (std::isinf(v))
            throw Error(ErrorKind::NonIntegrable, "infinite payoff on an Euler path");
        payoff[path] = v;
    });

    EulerReport rep;
    rep.estimate = summarize(payoff, params.seed, "euler");
    for (unsigned char f : flags) {
        rep.exploded += f & 1u;
        rep.absorbed += (f >> 1) & 1u;
    }
    rep.cap_bias_warning = rep.exploded > 0 && params.explosion == EulerParams::Explosion::Freeze;
    return rep;
}

PriceEstimate euler_price(const PolynomialSpec& spec, const ClaimSpec& claim, const EulerParams& params) {
    return euler_run(spec, claim, params).estimate;
}

} // namespace qnv
