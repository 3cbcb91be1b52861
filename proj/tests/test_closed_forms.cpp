#include "qnv/closed_forms.hpp"
#include "qnv/errors.hpp"

#include "spec_generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <fmt/format.h>

using namespace qnv;
using qnv::testing::Branch;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> interior_grid(const ClosedFormMap& m, int n, double window = 3.0) {
    const double lo = std::isfinite(m.a()) ? m.a() : -window;
    const double hi = std::isfinite(m.b()) ? m.b() : window;
    std::vector<double> xs;
    for (int k = 1; k < n; ++k)
        xs.push_back(lo + (hi - lo) * k / n);
    return xs;
}
} // namespace

TEST(Build, GeometricBrownianMotion) {
    const auto m = ClosedFormMap::build({0, 1, 0, 1});
    EXPECT_EQ(m.kind(), MapCase::ShiftedGbm);
    EXPECT_EQ(m.C(), -0.25);
    EXPECT_EQ(m.a(), -kInf);
    EXPECT_EQ(m.b(), kInf);
    for (double x : {-1.0, 0.3, 2.0}) {
        EXPECT_NEAR(m.f(x), std::exp(x), 1e-14 * std::exp(x));
        EXPECT_NEAR(m.g(x), std::exp(-x / 2), 1e-14);
    }
    EXPECT_EQ(m.f(0), 1.0);
    EXPECT_EQ(m.g(0), 1.0);
    EXPECT_EQ(m.mu(0), 0.5);
}

TEST(Build, InverseBessel) {
    const auto m = ClosedFormMap::build({1, 0, 0, 1});
    EXPECT_EQ(m.kind(), MapCase::DoubleRoot);
    EXPECT_EQ(m.mu0(), 1.0);
    EXPECT_EQ(m.a(), -kInf);
    EXPECT_EQ(m.b(), 1.0);
    EXPECT_DOUBLE_EQ(m.f(0.5), 2.0);
    EXPECT_DOUBLE_EQ(m.g(0.5), 0.5);
    EXPECT_DOUBLE_EQ(m.mu(0.5), 2.0);
    EXPECT_EQ(m.f(1.0), kInf);
    EXPECT_EQ(m.g(1.0), 0.0);
    EXPECT_FALSE(m.zero_level().has_value());
}

TEST(Build, TangentBranch) {
    // P(z) = 1 + z^2 from y0 = 1: f(x) = tan(x + pi/4), g(x) = cos(x + pi/4) / cos(pi/4)
    const auto m = ClosedFormMap::build({1, 0, 1, 1});
    EXPECT_EQ(m.kind(), MapCase::Tan);
    EXPECT_DOUBLE_EQ(m.a(), -3 * kPi / 4);
    EXPECT_DOUBLE_EQ(m.b(), kPi / 4);
    for (double x : {-2.0, -0.7, 0.0, 0.5}) {
        EXPECT_NEAR(m.f(x), std::tan(x + kPi / 4), 1e-12 * (1 + std::abs(std::tan(x + kPi / 4))));
        EXPECT_NEAR(m.g(x), std::cos(x + kPi / 4) / std::cos(kPi / 4), 1e-12);
    }
    EXPECT_EQ(m.f(m.b()), kInf);
    EXPECT_EQ(m.f(m.a()), -kInf);
    EXPECT_EQ(m.g(m.b()), 0.0);
    // close to the end the value stays accurate: f ~ 1 / (b - x)
    const double x = m.b() - 1e-10;
    EXPECT_NEAR(m.f(x) * 1e-10, 1.0, 1e-5);
    ASSERT_TRUE(m.zero_level().has_value());
    EXPECT_DOUBLE_EQ(*m.zero_level(), -kPi / 4);
}

TEST(Build, NegativeMuDoubleRootHasLowerBoundary) {
    const auto m = ClosedFormMap::build({-1, 0, 0, 1});
    EXPECT_EQ(m.mu0(), -1.0);
    EXPECT_EQ(m.a(), -1.0);
    EXPECT_EQ(m.b(), kInf);
    EXPECT_EQ(m.f(-1.0), kInf);
}

TEST(Build, StartAtRootIsConstant) {
    const auto m = ClosedFormMap::build({1, -3, 2, 2});
    EXPECT_TRUE(m.constant());
    EXPECT_EQ(m.f(0.7), 2.0);
    EXPECT_DOUBLE_EQ(m.g(0.7), std::exp(-m.mu0() * 0.7));
}

TEST(Evaluate, DomainErrorsOutsideTheClosedDomain) {
    const auto m = ClosedFormMap::build({1, 0, 0, 1});
    try {
        m.f(1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
}

TEST(Invert, Examples) {
    EXPECT_DOUBLE_EQ(ClosedFormMap::build({1, 0, 0, 1}).invert_f(2.0), 0.5);
    EXPECT_DOUBLE_EQ(ClosedFormMap::build({0, 1, 0, 1}).invert_f(std::exp(1.0)), 1.0);
    const auto tan_map = ClosedFormMap::build({1, 0, 1, 1});
    EXPECT_NEAR(tan_map.invert_f(std::tan(3 * kPi / 8)), kPi / 8, 1e-15);
    EXPECT_EQ(tan_map.invert_f(kInf), tan_map.b());
    try {
        ClosedFormMap::build({1, 0, 0, 1}).invert_f(-1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RangeError);
    }
}

TEST(Reciprocal, InverseBesselBecomesBrownianMotion) {
    const auto r = reciprocal_map(ClosedFormMap::build({1, 0, 0, 1}));
    EXPECT_TRUE(r.is_reciprocal());
    EXPECT_EQ(r.polynomial(), (PolynomialSpec{-0.0, -0.0, -1, 1}));
    EXPECT_EQ(r.a(), -kInf);
    EXPECT_EQ(r.b(), 1.0);
    for (double x : {-3.0, 0.0, 0.25, 0.9}) {
        EXPECT_NEAR(r.f(x), 1 - x, 1e-15);
        EXPECT_NEAR(r.g(x), 1.0, 1e-15);
    }
    EXPECT_EQ(r.f(1.0), 0.0);
}

TEST(Reciprocal, GeometricBrownianMotion) {
    const auto r = reciprocal_map(ClosedFormMap::build({0, 1, 0, 1}));
    for (double x : {-1.0, 0.5, 2.0}) {
        EXPECT_NEAR(r.f(x), std::exp(-x), 1e-14 * std::exp(-x));
        EXPECT_NEAR(r.g(x), std::exp(x / 2), 1e-14 * std::exp(x / 2));
    }
}

TEST(Reciprocal, CutsTheDomainAtTheZeroOfF) {
    const auto m = ClosedFormMap::build({1, 0, 1, 1});
    const auto r = reciprocal_map(m);
    EXPECT_DOUBLE_EQ(r.a(), -kPi / 4);
    EXPECT_EQ(r.b(), m.b());
    EXPECT_EQ(r.f(r.a()), kInf);
    EXPECT_EQ(r.f(r.b()), 0.0);
    EXPECT_EQ(r.g(r.a()), 0.0);
}

TEST(Reciprocal, RejectsNestedReciprocal) {
    const auto r = reciprocal_map(ClosedFormMap::build({0, 1, 0, 1}));
    EXPECT_THROW(reciprocal_map(r), Error);
}

class BranchProperty : public ::testing::TestWithParam<int> {};

TEST_P(BranchProperty, InvariantsOnRandomSpecs) {
    const Branch b = static_cast<Branch>(GetParam());
    std::mt19937_64 rng(100 + GetParam());
    for (int trial = 0; trial < 25; ++trial) {
        const PolynomialSpec s = qnv::testing::random_spec(b, rng);
        SCOPED_TRACE(fmt::format("{} e=({}, {}, {}) y0={}", qnv::testing::branch_name(b), s.e1, s.e2, s.e3, s.y0));
        const auto m = ClosedFormMap::build(s);
        EXPECT_LT(m.a(), 0.0);
        EXPECT_GT(m.b(), 0.0);
        EXPECT_NEAR(m.f(0), s.y0, 1e-12 * s.y0);
        EXPECT_NEAR(m.g(0), 1.0, 1e-12);
        EXPECT_NEAR(m.mu(0), m.mu0(), 1e-12 * (1 + std::abs(m.mu0())));

        const ResidualReport res = ode_residuals(m, 1000);
        EXPECT_LE(res.f_residual, 1e-6);
        EXPECT_LE(res.g_residual, 1e-6);

        const auto xs = interior_grid(m, 400);
        const double sign0 = m.f_prime(0.0) > 0 ? 1.0 : -1.0;
        for (double x : xs) {
            EXPECT_GT(m.g(x), 0.0) << x;
            if (!m.constant()) {
                EXPECT_GT(sign0 * m.f_prime(x), 0.0) << x;
            }
            EXPECT_NEAR(m.mu(x), m.classification().effective.e1 * m.f(x) + m.classification().effective.e2 / 2,
                        1e-12 * (1 + std::abs(m.mu(x))));
            if (!m.constant()) {
                const double y = m.f(x);
                EXPECT_NEAR(m.f(m.invert_f(y)), y, 1e-10 * std::max(1.0, std::abs(y)));
            }
        }
        if (std::isfinite(m.b())) {
            EXPECT_TRUE(std::isinf(m.f(m.b())));
            EXPECT_EQ(m.g(m.b()), 0.0);
            EXPECT_LT(std::abs(m.g(m.b() - 1e-9 * std::max(1.0, std::abs(m.b())))), 1e-6);
        }
        if (std::isfinite(m.a())) {
            EXPECT_TRUE(std::isinf(m.f(m.a())));
            EXPECT_EQ(m.g(m.a()), 0.0);
        }
    }
}

TEST_P(BranchProperty, ReciprocalMatchesDualBuild) {
    const Branch b = static_cast<Branch>(GetParam());
    std::mt19937_64 rng(200 + GetParam());
    for (int trial = 0; trial < 25; ++trial) {
        const PolynomialSpec s = qnv::testing::random_spec(b, rng);
        SCOPED_TRACE(fmt::format("{} e=({}, {}, {}) y0={}", qnv::testing::branch_name(b), s.e1, s.e2, s.e3, s.y0));
        const auto m = ClosedFormMap::build(s);
        const auto r = reciprocal_map(m);
        const auto d = ClosedFormMap::build(dual_polynomial(s));
        EXPECT_EQ(r.C(), d.C());
        for (double x : interior_grid(r, 400)) {
            if (!d.inside(x))
                continue;
            EXPECT_NEAR(r.f(x), d.f(x), 1e-10 * std::abs(d.f(x)));
            EXPECT_NEAR(r.g(x), d.g(x), 1e-10 * std::abs(d.g(x)));
            EXPECT_NEAR(r.g(x) * s.y0, m.g(x) * m.f(x), 1e-10 * std::abs(m.g(x) * m.f(x)));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(AllBranches, BranchProperty, ::testing::Range(0, qnv::testing::kBranches),
                         [](const auto& info) {
                             std::string n = qnv::testing::branch_name(static_cast<Branch>(info.param));
                             std::erase(n, '-');
                             return n;
                         });
