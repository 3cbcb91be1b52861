#include "qnv/brownian_engine.hpp"

#include "qnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/random/normal_distribution.hpp>

namespace qnv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void simulate_into(PathGrid& path, Xoshiro256pp& rng, double T, std::size_t n_steps) {
    QNV_REQUIRE(n_steps >= 1 && T > 0.0, DomainError, "need n_steps >= 1 and T > 0");
    const double dt = T / static_cast<double>(n_steps);
    const double sqdt = std::sqrt(dt);
    path.dt = dt;
    path.times.resize(n_steps + 1);
    path.w.resize(n_steps + 1);
    path.step_max.resize(n_steps);
    path.step_min.resize(n_steps);
    boost::random::normal_distribution<double> normal;
    double w = 0.0, lo = 0.0, hi = 0.0;
    path.times[0] = 0.0;
    path.w[0] = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double next = w + sqdt * normal(rng);
        const double d = next - w;
        const double u_max = rng.uniform_open0();
        const double u_min = rng.uniform_open0();
        // inverse of P(max >= m) = exp(-2 (m - w)(m - next) / dt)
        const double bmax = 0.5 * (w + next + std::sqrt(d * d - 2.0 * dt * std::log(u_max)));
        const double bmin = 0.5 * (w + next - std::sqrt(d * d - 2.0 * dt * std::log(u_min)));
        path.step_max[i] = bmax;
        path.step_min[i] = bmin;
        hi = std::max(hi, bmax);
        lo = std::min(lo, bmin);
        w = next;
        path.w[i + 1] = w;
        path.times[i + 1] = dt * static_cast<double>(i + 1);
    }
    path.times[n_steps] = T;
    path.run_min = lo;
    path.run_max = hi;
}

PathGrid simulate_path(std::uint64_t seed, std::uint64_t index, double T, std::size_t n_steps) {
    PathGrid p;
    auto rng = path_stream(seed, StreamSalt::BrownianEngine, index);
    simulate_into(p, rng, T, n_steps);
    return p;
}

std::vector<PathGrid> simulate_paths(std::uint64_t seed, std::size_t n_paths, double T,
                                     std::size_t n_steps, double step_budget) {
    McParams mc;
    mc.n_paths = std::max<std::size_t>(n_paths, 2);
    mc.step_budget = step_budget;
    check_budget(mc, static_cast<double>(n_steps));
    std::vector<PathGrid> out(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i)
        out[i] = simulate_path(seed, i, T, n_steps);
    return out;
}

std::optional<std::size_t> first_crossing(const PathGrid& path, double level) {
    if (!std::isfinite(level))
        return std::nullopt;
    for (std::size_t i = 0; i < path.n_steps(); ++i) {
        if (level <= 0.0 ? path.step_min[i] <= level : path.step_max[i] >= level)
            return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> first_exit(const PathGrid& path, double a, double b) {
    for (std::size_t i = 0; i < path.n_steps(); ++i)
        if (path.step_max[i] >= b || path.step_min[i] <= a)
            return i;
    return std::nullopt;
}

PathOutcome path_outcome(const ClosedFormMap& map, const PathGrid& path, bool stopped) {
    const double a = map.a();
    const double b = map.b();
    const std::optional<double> zero = stopped ? map.zero_level() : std::nullopt;
    const std::size_t n = path.n_steps();
    PathOutcome out;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double smax = path.step_max[i];
        const double smin = path.step_min[i];
        const bool hit_zero = zero && (*zero < 0.0 ? smin <= *zero : smax >= *zero);
        const bool up = smax >= b;
        const bool down = smin <= a;
        if (hit_zero || up || down) {
            const double wi = path.w[i];
            const double edge = up && down ? (b - wi < wi - a ? b : a) : (up ? b : a);
            bool stop_first = hit_zero;
            if (hit_zero && (up || down))
                stop_first = std::abs(*zero - wi) <= std::abs(edge - wi);
            out.step = i;
            out.time = path.times[i] + 0.5 * path.dt;
            out.end = stop_first ? PathOutcome::End::StoppedAtZero : PathOutcome::End::Exploded;
            out.w_end = stop_first ? *zero : edge;
            out.run_min = std::min({lo, wi, out.w_end});
            out.run_max = std::max({hi, wi, out.w_end});
            return out;
        }
        lo = std::min(lo, smin);
        hi = std::max(hi, smax);
    }
    out.end = PathOutcome::End::Survived;
    out.step = n;
    out.time = path.times[n];
    out.w_end = path.w[n];
    out.run_min = lo;
    out.run_max = hi;
    return out;
}

double outcome_weight(const ClosedFormMap& map, const PathOutcome& o, double T) {
    switch (o.end) {
    case PathOutcome::End::Exploded: return 0.0;
    case PathOutcome::End::StoppedAtZero: return std::exp(map.C() * std::min(o.time, T) / 2.0) * map.g(o.w_end);
    case PathOutcome::End::Survived: return std::exp(map.C() * T / 2.0) * map.g(o.w_end);
    }
    return 0.0;
}

std::pair<double, double> fill_process_path(const ClosedFormMap& map, const PathGrid& path,
                                            const PathOutcome& o, std::vector<double>& values) {
    const std::size_t n = path.n_steps();
    values.resize(n + 1);
    const std::size_t last = o.end == PathOutcome::End::Survived ? n : o.step;
    for (std::size_t j = 0; j <= last; ++j)
        values[j] = map.f(path.w[j]);
    double after = 0.0;
    if (o.end == PathOutcome::End::Exploded)
        after = map.f(o.w_end);
    for (std::size_t j = last + 1; j <= n; ++j)
        values[j] = after;
    double f_lo = map.f(o.run_min);
    double f_hi = map.f(o.run_max);
    if (o.end == PathOutcome::End::StoppedAtZero) {
        // the stop level is where f vanishes
        if (o.w_end == o.run_min)
            f_lo = 0.0;
        else
            f_hi = 0.0;
    }
    return {std::min(f_lo, f_hi), std::max(f_lo, f_hi)};
}

namespace {

enum class WeightMode { Payoff, WeightOnly };

struct Samples {
    std::vector<double> hw;
    std::vector<double> w;
};

Samples run_transform(const ClosedFormMap& map, const ClaimSpec& claim, const McParams& mc, bool stopped,
                      WeightMode mode) {
    const double T = claim.T;
    const std::size_t n_steps = resolve_steps(mc, T);
    check_budget(mc, static_cast<double>(n_steps));
    QNV_REQUIRE(mode == WeightMode::WeightOnly || static_cast<bool>(claim.dollar), InvalidSpec,
                "claim has no dollar payoff");
    Samples s;
    s.hw.assign(mc.n_paths, 0.0);
    s.w.assign(mc.n_paths, 0.0);
    parallel_for(mc.n_paths, mc.threads, [&](std::size_t i) {
        thread_local PathGrid path;
        thread_local std::vector<double> values;
        auto rng = path_stream(mc.seed, StreamSalt::BrownianEngine, i);
        simulate_into(path, rng, T, n_steps);
        const PathOutcome o = path_outcome(map, path, stopped);
        const double weight = outcome_weight(map, o, T);
        s.w[i] = weight;
        if (mode == WeightMode::WeightOnly) {
            s.hw[i] = weight;
            return;
        }
        if (weight == 0.0)
            return;  // infinity * 0 = 0 off the surviving event
        const auto [lo, hi] = fill_process_path(map, path, o, values);
        const PathView view{path.times, values, lo, hi};
        const double h = claim.dollar(view);
        if (std::isnan(h))
            throw Error(ErrorKind::NonFinitePayoff, "payoff returned NaN");
        if (std::isinf(h))
            throw Error(ErrorKind::NonIntegrable, "infinite payoff on a path with positive weight");
        s.hw[i] = h * weight;
    });
    return s;
}

} // namespace

PriceEstimate price_unstopped(const PolynomialSpec& spec, const ClaimSpec& claim, const McParams& mc) {
    const ClosedFormMap map = ClosedFormMap::build(spec);
    const Samples s = run_transform(map, claim, mc, false, WeightMode::Payoff);
    return summarize_weighted(s.hw, s.w, mc.weight_control, mc.seed, "transform");
}

PriceEstimate price_stopped(const PolynomialSpec& spec, const ClaimSpec& claim, const McParams& mc) {
    const ClosedFormMap map = ClosedFormMap::build(spec);
    const Samples s = run_transform(map, claim, mc, true, WeightMode::Payoff);
    return summarize_weighted(s.hw, s.w, mc.weight_control, mc.seed, "transform");
}

PriceEstimate weight_normalization(const PolynomialSpec& spec, double T, const McParams& mc, bool stopped) {
    const ClosedFormMap map = ClosedFormMap::build(spec);
    ClaimSpec unit;
    unit.T = T;
    const Samples s = run_transform(map, unit, mc, stopped, WeightMode::WeightOnly);
    return summarize(s.w, mc.seed, "transform");
}

bool event_E1(const ClosedFormMap& map, double run_min, double run_max) {
    QNV_REQUIRE(!map.is_reciprocal(), CaseError, "event table applies to primal maps");
    double lo = run_min, hi = run_max;
    double mu0 = map.mu0();
    double c = map.shift();
    const double s = map.classification().constants.sqrt_abs_C;
    switch (map.kind()) {
    case MapCase::Constant:
    case MapCase::Linear:
    case MapCase::ShiftedGbm:
    case MapCase::Tanh: return true;
    case MapCase::Tan:
        return (c - std::numbers::pi / 2.0) / s < lo && hi < (c + std::numbers::pi / 2.0) / s;
    default: break;
    }
    if (mu0 < 0.0) {
        // table is stated for mu0 >= 0; apply it to -W
        std::tie(lo, hi) = std::pair{-run_max, -run_min};
        mu0 = -mu0;
        c = -c;
    }
    if (map.kind() == MapCase::DoubleRoot)
        return hi < 1.0 / mu0;
    return hi < -c / s;  // Coth
}

bool event_E1(const PolynomialSpec& spec, double run_min, double run_max) {
    return event_E1(ClosedFormMap::build(spec), run_min, run_max);
}

bool event_E2(const ClosedFormMap& map, double stopped_min, double stopped_max) {
    for (double r : roots_of(map.classification()))
        if (r >= map.classification().spec.y0)
            return true;
    return event_E1(map, stopped_min, stopped_max);
}

bool event_E2(const PolynomialSpec& spec, double stopped_min, double stopped_max) {
    return event_E2(ClosedFormMap::build(spec), stopped_min, stopped_max);
}

} // namespace qnv
