#include "qnv/measures.hpp"

#include "qnv/errors.hpp"
#include "qnv/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace qnv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Seeds of estimates that must be statistically independent of the run keyed by `seed`.
std::uint64_t side_seed(std::uint64_t seed, std::uint64_t k) { return splitmix64_mix(seed ^ (0xa5a5a5a5ULL + k)); }

McParams with_seed(McParams mc, std::uint64_t seed) {
    mc.seed = seed;
    return mc;
}

PriceEstimate scaled(PriceEstimate e, double k) {
    e.mean *= k;
    e.std_error *= std::abs(k);
    e.ci95_lo = e.mean - 1.96 * e.std_error;
    e.ci95_hi = e.mean + 1.96 * e.std_error;
    return e;
}

double reciprocal(double v) {
    if (v == 0.0)
        return kInf;
    if (std::isinf(v))
        return 0.0;
    return 1.0 / v;
}

bool close_rel(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

ClaimSpec terminal(std::function<double(double)> fn, double T, std::string label) {
    ClaimSpec c;
    c.T = T;
    c.label = std::move(label);
    c.dollar = [fn = std::move(fn)](const PathView& v) { return fn(v.terminal()); };
    return c;
}

} // namespace

DualModel make_dual_model(const PolynomialSpec& spec) {
    QNV_REQUIRE(spec.y0 > 0.0, DomainError, "numeraire change needs x0 > 0");
    DualModel m{spec, dual_polynomial(spec), ClosedFormMap::build(spec), ClosedFormMap::build(spec),
                ClosedFormMap::build(dual_polynomial(spec))};
    m.reciprocal = reciprocal_map(m.primal);
    return m;
}

bool SwapOutcome::swapped() const noexcept {
    using End = PathOutcome::End;
    switch (primal.end) {
    case End::Survived: return dual.end == End::Survived;
    case End::StoppedAtZero: return dual.end == End::Exploded && dual.step == primal.step;
    case End::Exploded: return dual.end == End::StoppedAtZero && dual.step == primal.step;
    }
    return false;
}

SwapOutcome swap_outcomes(const DualModel& model, const PathGrid& path) {
    return {path_outcome(model.primal, path, true), path_outcome(model.dual, path, true)};
}

FoellmerResult foellmer_expectation(const PolynomialSpec& spec, const Payoff& H, double T, const McParams& mc) {
    const DualModel model = make_dual_model(spec);
    const double x0 = spec.y0;

    // X = 1/Xhat along the dual path; paths where Xhat died are {X_T = inf}
    ClaimSpec dual_claim;
    dual_claim.T = T;
    dual_claim.label = "dual side";
    dual_claim.dollar = [&H](const PathView& v) {
        const double xhat = v.terminal();
        if (!(xhat > 0.0))
            return 0.0;
        thread_local std::vector<double> values;
        values.resize(v.values.size());
        std::transform(v.values.begin(), v.values.end(), values.begin(), reciprocal);
        const PathView x{v.times, values, reciprocal(v.path_max), reciprocal(v.path_min)};
        return H(x) * xhat;
    };
    ClaimSpec primal_claim;
    primal_claim.T = T;
    primal_claim.label = "primal side";
    primal_claim.dollar = [&H](const PathView& v) { return v.terminal() > 0.0 ? H(v) : 0.0; };

    FoellmerResult r;
    r.dual_side = price_stopped(model.dual_spec, dual_claim, mc);
    r.primal_side = scaled(price_stopped(spec, primal_claim, with_seed(mc, side_seed(mc.seed, 1))), 1.0 / x0);
    r.difference = r.dual_side.mean - r.primal_side.mean;
    return r;
}

void require_symmetric_shape(const PolynomialSpec& spec, double L, bool at_barrier) {
    QNV_REQUIRE(L > 0.0 && std::isfinite(L), SpecShapeError, "barrier level must be positive");
    const double e1L2 = spec.e1 * L * L;
    const bool shape = spec.e3 == e1L2 || close_rel(spec.e3, e1L2, 1e-10);
    QNV_REQUIRE(shape, SpecShapeError, fmt::format("need e3 = e1 L^2, got e3={} and e1 L^2={}", spec.e3, e1L2));
    if (at_barrier)
        QNV_REQUIRE(close_rel(spec.y0, L, 1e-10), SpecShapeError, fmt::format("need x0 = L, got {} vs {}", spec.y0, L));
    else
        QNV_REQUIRE(spec.y0 > L, SpecShapeError, fmt::format("down-and-in hedge needs x0 > L, got {} <= {}", spec.y0, L));
}

SymmetryResult symmetry_check(const PolynomialSpec& spec, const ScalarPayoff& h, double L, double T,
                              const McParams& mc) {
    require_symmetric_shape(spec, L, true);
    const ClaimSpec lhs = terminal([&h, L](double x) { return h(x / L); }, T, "h(X/L)");
    const ClaimSpec rhs = terminal(
        [&h, L](double x) {
            if (x == 0.0)
                return 0.0;  // h(inf) is finite
            return h(L / x) * (x / L);
        },
        T, "h(L/X) X/L");
    SymmetryResult r;
    r.lhs = price_stopped(spec, lhs, mc);
    r.rhs = price_stopped(spec, rhs, with_seed(mc, side_seed(mc.seed, 2)));
    r.z = z_score(r.lhs, r.rhs);
    return r;
}

double HedgePlan::hedge_value(double x_T, bool hit) const {
    double v = 0.0;
    for (const HedgePosition& p : positions) {
        const bool held = p.initial ? !(hit && p.sold_at_barrier) : hit;
        if (held)
            v += p.payoff(x_T);
    }
    return v;
}

double HedgePlan::target_value(double x_T, bool hit) const { return hit ? h(x_T / L) : 0.0; }

HedgePlan semistatic_hedge_plan(const PolynomialSpec& spec, const ScalarPayoff& h, double L, double T) {
    require_symmetric_shape(spec, L, false);
    HedgePlan plan{spec, L, T, h, {}};
    plan.positions.push_back(
        {"h(X_T/L) 1{X_T<=L}", [h, L](double x) { return x <= L ? h(x / L) : 0.0; }, true, false});
    plan.positions.push_back({"h(L/X_T)(X_T/L) 1{X_T<L}",
                              [h, L](double x) {
                                  if (!(x < L) || x == 0.0)
                                      return 0.0;
                                  return h(L / x) * (x / L);
                              },
                              true, true});
    plan.positions.push_back(
        {"h(X_T/L) 1{X_T>L}", [h, L](double x) { return x > L ? h(x / L) : 0.0; }, false, false});
    return plan;
}

ReplicationReport verify_replication(const HedgePlan& plan, std::size_t n_paths, std::uint64_t seed) {
    const ClosedFormMap map = ClosedFormMap::build(plan.spec);
    McParams mc;
    mc.n_paths = n_paths;
    const std::size_t n = resolve_steps(mc, plan.T);
    check_budget(mc, static_cast<double>(n));
    ReplicationReport rep;
    PathGrid path;
    std::vector<double> values;
    for (std::size_t i = 0; i < n_paths; ++i) {
        auto rng = path_stream(seed, StreamSalt::BrownianEngine, i);
        simulate_into(path, rng, plan.T, n);
        const PathOutcome o = path_outcome(map, path, true);
        if (outcome_weight(map, o, plan.T) == 0.0)
            continue;
        const auto [lo, hi] = fill_process_path(map, path, o, values);
        const bool hit = lo <= plan.L;
        const double x = values.back();
        ++rep.paths;
        rep.hits += hit ? 1 : 0;
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(plan.hedge_value(x, hit) - plan.target_value(x, hit)));
    }
    return rep;
}

HedgePrices price_hedge(const HedgePlan& plan, const McParams& mc) {
    ClaimSpec barrier;
    barrier.T = plan.T;
    barrier.label = "down-and-in";
    barrier.dollar = [&plan](const PathView& v) { return plan.target_value(v.terminal(), v.path_min <= plan.L); };
    const ClaimSpec initial = terminal(
        [&plan](double x) { return plan.positions[0].payoff(x) + plan.positions[1].payoff(x); }, plan.T,
        "initial hedge");

    HedgePrices r;
    r.barrier = price_stopped(plan.spec, barrier, mc);
    r.initial = price_stopped(plan.spec, initial, with_seed(mc, side_seed(mc.seed, 3)));
    PolynomialSpec restart = plan.spec;
    restart.y0 = plan.L;
    const ScalarPayoff above = [h = plan.h](double u) { return u > 1.0 ? h(u) : 0.0; };
    r.at_barrier = symmetry_check(restart, above, plan.L, plan.T, mc);
    return r;
}

JointPriceResult joint_price(const PolynomialSpec& spec, const ClaimSpec& joint, const McParams& mc) {
    QNV_REQUIRE(joint.dollar && joint.euro, InvalidSpec, "joint claim needs a dollar and a euro leg");
    QNV_REQUIRE(spec.y0 > 0.0, DomainError, "joint pricing needs x0 > 0");
    const ClosedFormMap map = ClosedFormMap::build(spec);
    const double x0 = spec.y0;
    const double T = joint.T;
    const std::size_t n = resolve_steps(mc, T);
    check_budget(mc, static_cast<double>(n));

    std::vector<double> hw(mc.n_paths, 0.0), w(mc.n_paths, 0.0), hyper(mc.n_paths, 0.0);
    std::vector<char> exploded(mc.n_paths, 0);
    parallel_for(mc.n_paths, mc.threads, [&](std::size_t i) {
        thread_local PathGrid path;
        thread_local std::vector<double> values;
        auto rng = path_stream(mc.seed, StreamSalt::BrownianEngine, i);
        simulate_into(path, rng, T, n);
        const PathOutcome o = path_outcome(map, path, true);
        if (o.end == PathOutcome::End::Exploded) {
            exploded[i] = 1;
            // euro weight at the explosion point: g f / x0 has a finite limit there
            const double weight = std::exp(map.C() * std::min(o.time, T) / 2.0) * map.gf(o.w_end) / x0;
            if (weight == 0.0)
                return;
            const auto [lo, hi] = fill_process_path(map, path, o, values);
            const double h = joint.euro(PathView{path.times, values, lo, hi});
            if (std::isnan(h))
                throw Error(ErrorKind::NonFinitePayoff, "euro leg returned NaN");
            if (std::isinf(h))
                throw Error(ErrorKind::NonIntegrable, "infinite euro payoff at hyperinflation");
            hyper[i] = h * weight;
            return;
        }
        const double weight = outcome_weight(map, o, T);
        w[i] = weight;
        if (weight == 0.0)
            return;
        const auto [lo, hi] = fill_process_path(map, path, o, values);
        const PathView view{path.times, values, lo, hi};
        const double h = joint.dollar(view);
        if (std::isnan(h))
            throw Error(ErrorKind::NonFinitePayoff, "dollar leg returned NaN");
        if (std::isinf(h))
            throw Error(ErrorKind::NonIntegrable, "infinite dollar payoff on a path with positive weight");
        const double x = view.terminal();
        if (x > 0.0 && std::isfinite(x)) {
            const double e = joint.euro(view) * x;
            if (!(std::abs(e - h) <= 1e-9 * std::max(1.0, std::abs(h))))
                throw Error(ErrorKind::LegInconsistency,
                            fmt::format("euro leg times X_T = {} but dollar leg = {} at X_T = {}", e, h, x));
        }
        hw[i] = h * weight;
    });

    JointPriceResult r;
    r.term1 = summarize_weighted(hw, w, mc.weight_control, mc.seed, "transform");
    r.term2 = summarize(hyper, mc.seed, "transform");
    r.hyperinflation_paths = static_cast<std::size_t>(std::count(exploded.begin(), exploded.end(), 1));

    // both terms live on the same paths: the error of the sum comes from per-path totals
    const double beta = mc.weight_control ? control_coefficient(hw, w) : 0.0;
    std::vector<double> combined(mc.n_paths);
    for (std::size_t i = 0; i < mc.n_paths; ++i)
        combined[i] = hw[i] - beta * (w[i] - 1.0) + x0 * hyper[i];
    r.total = summarize(combined, mc.seed, "transform");
    r.total.mean = r.term1.mean + x0 * r.term2.mean;
    r.total.ci95_lo = r.total.mean - 1.96 * r.total.std_error;
    r.total.ci95_hi = r.total.mean + 1.96 * r.total.std_error;
    return r;
}

} // namespace qnv
