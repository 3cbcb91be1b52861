#include "qnv/errors.hpp"
#include "qnv/random.hpp"
#include "qnv/sde_oracle.hpp"

#include <gtest/gtest.h>

#include <boost/random/normal_distribution.hpp>

#include <cmath>

using namespace qnv;

namespace {

EulerParams euler(std::size_t n_paths, double dt, bool absorb, std::uint64_t seed = 1) {
    EulerParams p;
    p.n_paths = n_paths;
    p.dt = dt;
    p.absorb_at_zero = absorb;
    p.seed = seed;
    return p;
}

ClaimSpec power(int k, double T = 1.0) {
    ClaimSpec c;
    c.T = T;
    c.dollar = [k](const PathView& v) { return std::pow(v.terminal(), k); };
    return c;
}

} // namespace

TEST(Euler, BrownianMotionTerminalLaw) {
    const auto p = euler(40000, 1e-2, false);
    const PriceEstimate m1 = euler_price({0, 0, 1, 2}, power(1), p);
    const PriceEstimate m2 = euler_price({0, 0, 1, 2}, power(2), p);
    EXPECT_LE(std::abs(m1.mean - 2.0), 4.0 * m1.std_error);
    EXPECT_LE(std::abs(m2.mean - 5.0), 4.0 * m2.std_error);
}

TEST(Euler, GeometricBrownianMotionMoments) {
    const auto p = euler(40000, 1e-3, false);
    const PriceEstimate m1 = euler_price({0, 1, 0, 1}, power(1), p);
    const PriceEstimate m2 = euler_price({0, 1, 0, 1}, power(2), p);
    EXPECT_LE(std::abs(m1.mean - 1.0), 4.0 * m1.std_error);
    // second moment e^T up to O(dt) discretisation bias
    EXPECT_LE(std::abs(m2.mean - std::exp(1.0)), 4.0 * m2.std_error + 0.01);
}

TEST(Euler, InverseBesselMean) {
    const PriceEstimate e = euler_price({1, 0, 0, 1}, power(1), euler(20000, 1e-3, false, 4));
    EXPECT_GE(e.mean, 0.67 - 3.0 * e.std_error);
    EXPECT_LE(e.mean, 0.70 + 3.0 * e.std_error);
}

TEST(Euler, StrongOrderOneHalf) {
    // pathwise error against y0 exp(B_T - T/2) at dt and dt/2 on the same noise
    const int fine = 64;
    const double T = 1.0, dt = T / fine;
    double err_coarse = 0.0, err_fine = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto rng = path_stream(5, StreamSalt::Test, i);
        boost::random::normal_distribution<double> normal;
        std::vector<double> dw(fine);
        for (auto& x : dw)
            x = std::sqrt(dt) * normal(rng);
        std::vector<double> dw2(fine / 2);
        for (int k = 0; k < fine / 2; ++k)
            dw2[k] = dw[2 * k] + dw[2 * k + 1];
        double B = 0.0;
        for (double x : dw)
            B += x;
        const double exact = std::exp(B - T / 2);
        err_fine += std::abs(euler_path({0, 1, 0, 1}, dw, false).back() - exact);
        err_coarse += std::abs(euler_path({0, 1, 0, 1}, dw2, false).back() - exact);
    }
    const double ratio = err_coarse / err_fine;
    EXPECT_GE(ratio, 1.2);
    EXPECT_LE(ratio, 2.2);
}

TEST(Euler, AbsorbedPathsStayAtZero) {
    const std::vector<double> dw = {0.3, -2.0, 0.5, 0.7, -0.1};
    const auto y = euler_path({0, 0, 1, 1}, dw, true);
    EXPECT_DOUBLE_EQ(y[1], 1.3);
    for (std::size_t j = 2; j < y.size(); ++j)
        EXPECT_EQ(y[j], 0.0);
    EulerParams p = euler(5000, 1e-2, true);
    const EulerReport r = euler_run({0, 0, 1, 0.3}, power(1), p);
    EXPECT_GT(r.absorbed, 0u);
    ClaimSpec min_claim;
    min_claim.dollar = [](const PathView& v) { return v.path_min < 0.0 ? 1.0 : 0.0; };
    EXPECT_EQ(euler_price({0, 0, 1, 0.3}, min_claim, p).mean, 0.0);
}

TEST(Euler, SeedDeterminismAndThreads) {
    EulerParams a = euler(2000, 1e-2, true, 9), b = a;
    b.threads = 3;
    const PriceEstimate x = euler_price({1, 0, 1, 1}, power(1), a);
    EXPECT_EQ(x.mean, euler_price({1, 0, 1, 1}, power(1), a).mean);
    EXPECT_EQ(x.mean, euler_price({1, 0, 1, 1}, power(1), b).mean);
    EXPECT_EQ(x.estimator, "euler");
}

TEST(Euler, CapHandling) {
    EulerParams p = euler(2000, 1e-2, false, 3);
    p.cap = 20.0;
    p.explosion = EulerParams::Explosion::Freeze;
    const EulerReport frozen = euler_run({1, 0, 0, 1}, power(1), p);
    EXPECT_GT(frozen.exploded, 0u);
    EXPECT_TRUE(frozen.cap_bias_warning);
    p.explosion = EulerParams::Explosion::Kill;
    const EulerReport killed = euler_run({1, 0, 0, 1}, power(1), p);
    EXPECT_EQ(killed.exploded, frozen.exploded);
    EXPECT_FALSE(killed.cap_bias_warning);
    EXPECT_LT(killed.estimate.mean, frozen.estimate.mean);
    p.cap = 5.0;
    EXPECT_THROW(euler_run({1, 0, 0, 1}, power(1), p), Error);
}

TEST(Euler, BudgetIsEnforced) {
    EulerParams p = euler(1000000, 1e-4, false);
    p.step_budget = 1e9;
    try {
        euler_run({0, 0, 1, 1}, power(1), p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceError);
    }
}
