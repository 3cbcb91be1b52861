#include "qnv/gbm_duality.hpp"

#include "qnv/errors.hpp"
#include "qnv/martingality.hpp"
#include "qnv/random.hpp"

#include <algorithm>
#include <cmath>

#include <boost/random/normal_distribution.hpp>

namespace qnv {

GbmDualSpec make_gbm_dual(const PolynomialSpec& spec) {
    const Classification cls = classify(spec);
    QNV_REQUIRE(cls.roots.kind == RootCase::TwoRealRoots, CaseError,
                "geometric Brownian motion route needs two distinct real roots");
    QNV_REQUIRE(!cls.roots.at_root, CaseError, "y0 is a root: the process is constant");
    GbmDualSpec d;
    d.e1 = cls.effective.e1;
    d.r1 = cls.roots.r1;
    d.r2 = cls.roots.r2;
    d.y0 = spec.y0;
    d.sigma = d.e1 * (d.r2 - d.r1);
    d.z0 = (d.y0 - d.r2) / (d.y0 - d.r1);
    return d;
}

double drifted_bm_hit_probability(double level, double drift, double vol, double T) {
    QNV_REQUIRE(vol > 0.0 && T >= 0.0, DomainError, "need vol > 0 and T >= 0");
    if (level == 0.0)
        return 1.0;
    if (level < 0.0)
        return drifted_bm_hit_probability(-level, -drift, vol, T);
    if (T == 0.0)
        return 0.0;
    const double sd = vol * std::sqrt(T);
    const double p = normal_cdf((-level + drift * T) / sd) +
                     std::exp(2.0 * drift * level / (vol * vol)) * normal_cdf((-level - drift * T) / sd);
    return std::clamp(p, 0.0, 1.0);
}

double survival_probability(const PolynomialSpec& spec, double T) {
    const GbmDualSpec d = make_gbm_dual(spec);
    QNV_REQUIRE(T >= 0.0, DomainError, "horizon must be nonnegative");
    if (d.z0 < 0.0 || T == 0.0)
        return 1.0;
    // log Z_t = log z0 + sigma B_t - sigma^2 t / 2 must reach 0
    const double vol = std::abs(d.sigma);
    return 1.0 - drifted_bm_hit_probability(-std::log(d.z0), -0.5 * vol * vol, vol, T);
}

namespace {

struct GbmScratch {
    std::vector<double> z;
    std::vector<double> level;
};

// Fills z (and N when `levels`) on the grid; returns survival and the extrema of Z.
bool gbm_path_into(const GbmDualSpec& d, Xoshiro256pp& rng, double T, std::size_t n, GbmScratch& out,
                   double& z_min, double& z_max) {
    const double dt = T / static_cast<double>(n);
    const double vol = std::abs(d.sigma);
    const double sd = vol * std::sqrt(dt);
    const double drift = -0.5 * vol * vol * dt;
    const double sign = d.z0 < 0.0 ? -1.0 : 1.0;
    const bool watch = d.z0 > 0.0;  // negative Z never reaches 1
    const bool from_below = d.z0 < 1.0;
    out.z.resize(n + 1);
    boost::random::normal_distribution<double> normal;
    double x = std::log(std::abs(d.z0));  // log |Z|
    double x_lo = x, x_hi = x;
    out.z[0] = d.z0;
    bool alive = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = x + drift + sd * normal(rng);
        const double diff = next - x;
        const double u_hi = rng.uniform_open0();
        const double u_lo = rng.uniform_open0();
        const double var = vol * vol * dt;
        const double step_hi = 0.5 * (x + next + std::sqrt(diff * diff - 2.0 * var * std::log(u_hi)));
        const double step_lo = 0.5 * (x + next - std::sqrt(diff * diff - 2.0 * var * std::log(u_lo)));
        if (watch && alive && (from_below ? step_hi >= 0.0 : step_lo <= 0.0))
            alive = false;
        x_lo = std::min(x_lo, step_lo);
        x_hi = std::max(x_hi, step_hi);
        x = next;
        out.z[i + 1] = sign * std::exp(x);
        if (alive && std::abs(1.0 - out.z[i + 1]) < 1e-12)
            alive = false;  // at the pole of the Moebius map: treat as stopped at tau
    }
    z_min = sign > 0.0 ? std::exp(x_lo) : -std::exp(x_hi);
    z_max = sign > 0.0 ? std::exp(x_hi) : -std::exp(x_lo);
    return alive;
}

} // namespace

GbmDualPath simulate_gbm_dual_path(const GbmDualSpec& dual, std::uint64_t seed, std::uint64_t index,
                                   double T, std::size_t n_steps) {
    QNV_REQUIRE(T > 0.0 && n_steps >= 1, DomainError, "need T > 0 and n_steps >= 1");
    auto rng = path_stream(seed, StreamSalt::GbmDual, index);
    GbmScratch s;
    GbmDualPath p;
    p.survived = gbm_path_into(dual, rng, T, n_steps, s, p.z_min, p.z_max);
    p.z = std::move(s.z);
    p.level.resize(p.z.size());
    std::transform(p.z.begin(), p.z.end(), p.level.begin(), [&](double z) { return dual.level(z); });
    return p;
}

PriceEstimate gbm_price(const PolynomialSpec& spec, const ClaimSpec& claim, const McParams& mc) {
    const GbmDualSpec d = make_gbm_dual(spec);
    QNV_REQUIRE(static_cast<bool>(claim.dollar), InvalidSpec, "claim has no dollar payoff");
    const double T = claim.T;
    const std::size_t n = resolve_steps(mc, T);
    check_budget(mc, static_cast<double>(n));
    std::vector<double> times(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        times[j] = T * static_cast<double>(j) / static_cast<double>(n);

    std::vector<double> hw(mc.n_paths, 0.0), w(mc.n_paths, 0.0);
    parallel_for(mc.n_paths, mc.threads, [&](std::size_t i) {
        thread_local GbmScratch scratch;
        auto rng = path_stream(mc.seed, StreamSalt::GbmDual, i);
        double z_lo = 0.0, z_hi = 0.0;
        if (!gbm_path_into(d, rng, T, n, scratch, z_lo, z_hi))
            return;
        const double weight = d.density(scratch.z[n]);
        w[i] = weight;
        scratch.level.resize(n + 1);
        for (std::size_t j = 0; j <= n; ++j)
            scratch.level[j] = d.level(scratch.z[j]);
        // N is increasing in Z on either side of the pole
        const PathView view{times, scratch.level, d.level(z_lo), d.level(z_hi)};
        const double h = claim.dollar(view);
        if (std::isnan(h))
            throw Error(ErrorKind::NonFinitePayoff, "payoff returned NaN");
        if (std::isinf(h))
            throw Error(ErrorKind::NonIntegrable, "infinite payoff on a path with positive weight");
        hw[i] = h * weight;
    });
    return summarize_weighted(hw, w, mc.weight_control, mc.seed, "gbm-dual");
}

} // namespace qnv
