#include "qnv/errors.hpp"
#include "qnv/polynomial.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace qnv;

TEST(Classify, BrownianMotionIsLinear) {
    const auto c = classify({0, 0, 1, 1});
    EXPECT_EQ(c.constants.C, 0.0);
    EXPECT_EQ(c.roots.kind, RootCase::Linear);
    EXPECT_EQ(c.roots.linear, LinearKind::ArithmeticBm);
}

TEST(Classify, InverseBesselIsDoubleRootAtZero) {
    const auto c = classify({1, 0, 0, 1});
    EXPECT_EQ(c.constants.C, 0.0);
    EXPECT_EQ(c.roots.kind, RootCase::DoubleRoot);
    EXPECT_EQ(c.roots.r1, 0.0);
    EXPECT_EQ(c.constants.mu0, 1.0);
    EXPECT_EQ(describe(c.roots), "DoubleRoot r=0");
}

TEST(Classify, TwoRootsWithStartInside) {
    const auto c = classify({1, -3, 2, 1.5});
    EXPECT_DOUBLE_EQ(c.constants.C, -0.25);
    EXPECT_EQ(c.roots.kind, RootCase::TwoRealRoots);
    EXPECT_DOUBLE_EQ(c.roots.r1, 1.0);
    EXPECT_DOUBLE_EQ(c.roots.r2, 2.0);
    EXPECT_EQ(c.roots.position, RootPosition::Inside);
}

TEST(Classify, ComplexRoots) {
    const auto c = classify({1, 0, 1, 1});
    EXPECT_EQ(c.constants.C, 1.0);
    EXPECT_EQ(c.roots.kind, RootCase::ComplexRoots);
}

TEST(Classify, NegativeLeadingCoefficientKeepsRootsOrdered) {
    const auto c = classify({-1, 3, -2, 3});
    EXPECT_EQ(c.roots.kind, RootCase::TwoRealRoots);
    EXPECT_DOUBLE_EQ(c.roots.r1, 1.0);
    EXPECT_DOUBLE_EQ(c.roots.r2, 2.0);
    EXPECT_EQ(c.roots.position, RootPosition::Outside);
}

TEST(Classify, StartAtRootIsFlagged) {
    const auto c = classify({1, -3, 2, 2});
    EXPECT_TRUE(c.roots.at_root);
    EXPECT_EQ(c.roots.position, RootPosition::AtRoot);
}

TEST(Classify, TinyLeadingCoefficientSnapsToZero) {
    const auto c = classify({1e-14, 1, 0, 1});
    EXPECT_EQ(c.roots.kind, RootCase::Linear);
    EXPECT_EQ(c.roots.linear, LinearKind::ShiftedGbm);
    EXPECT_EQ(c.spec.e1, 1e-14);
    EXPECT_EQ(c.effective.e1, 0.0);
}

TEST(Classify, RejectsNonFiniteAndNonPositiveStart) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    for (const PolynomialSpec& s : {PolynomialSpec{nan, 0, 0, 1}, PolynomialSpec{0, inf, 0, 1},
                                    PolynomialSpec{0, 0, 1, 0}, PolynomialSpec{0, 0, 1, -1},
                                    PolynomialSpec{0, 0, 1, nan}}) {
        try {
            classify(s);
            FAIL() << "accepted an invalid spec";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidSpec);
        }
    }
}

TEST(DualPolynomial, Examples) {
    EXPECT_EQ(dual_polynomial({1, 0, 0, 1}), (PolynomialSpec{-0.0, -0.0, -1, 1}));
    EXPECT_EQ(dual_polynomial({0, 1, 0, 2}), (PolynomialSpec{-0.0, -1, -0.0, 0.5}));
    const PolynomialSpec d = dual_polynomial({1, -3, 2, 1.5});
    EXPECT_EQ(d, (PolynomialSpec{-2, 3, -1, 1.0 / 1.5}));
    const auto c = classify(d);
    ASSERT_EQ(c.roots.kind, RootCase::TwoRealRoots);
    EXPECT_DOUBLE_EQ(c.roots.r1, 0.5);
    EXPECT_DOUBLE_EQ(c.roots.r2, 1.0);
}

TEST(EvalP, Examples) {
    EXPECT_EQ(eval_P({1, -3, 2, 1}, 1.0), 0.0);
    EXPECT_EQ(eval_P({0, 0, 1, 1}, 7.0), 1.0);
    EXPECT_EQ(eval_P({1, 0, 1, 1}, 2.0), 5.0);
    EXPECT_TRUE(roots_of(classify({1, 0, 1, 1})).empty());
}

namespace {

PolynomialSpec random_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> start(0.1, 4.0);
    return {coef(rng), coef(rng), coef(rng), start(rng)};
}

} // namespace

TEST(PolynomialProperty, RootsAreZerosOfP) {
    std::mt19937_64 rng(1);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const PolynomialSpec s = random_spec(rng);
        const auto c = classify(s);
        if (c.roots.kind != RootCase::TwoRealRoots)
            continue;
        ++checked;
        EXPECT_LT(c.roots.r1, c.roots.r2);
        for (double r : roots_of(c)) {
            const double scale = std::abs(s.e1) * r * r + std::abs(s.e2 * r) + std::abs(s.e3);
            EXPECT_LE(std::abs(eval_P(s, r)), 1e-12 * std::max(1.0, scale)) << r;
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(PolynomialProperty, DualIsAnInvolutionAndKeepsC) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
        PolynomialSpec s = random_spec(rng);
        s.y0 = 0.5;  // 1/(1/y0) is exact for powers of two
        EXPECT_EQ(dual_polynomial(dual_polynomial(s)), s);
        EXPECT_EQ(discriminant_constant(s), discriminant_constant(dual_polynomial(s)));
    }
}

TEST(PolynomialProperty, ClassificationDuality) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < 2000; ++i) {
        PolynomialSpec s = random_spec(rng);
        switch (pick(rng)) {
        case 0: break;
        case 1: s.e3 = 0.0; break;              // zero is a simple root (when e2 != 0)
        case 2: s.e2 = 0.0; s.e3 = 0.0; break;  // zero is a double root
        case 3: s.e2 = 0.0; s.e3 = std::abs(s.e3) * (s.e1 > 0 ? 1 : -1); break;
        }
        if (s.e1 == 0.0)
            continue;
        const auto c = classify(s);
        const auto d = classify(dual_polynomial(s));
        const std::vector<double> roots = roots_of(c);
        const bool zero_root = std::any_of(roots.begin(), roots.end(), [](double r) { return r == 0.0; });
        if (c.roots.kind == RootCase::ComplexRoots) {
            EXPECT_EQ(d.roots.kind, RootCase::ComplexRoots);
        } else if (c.roots.kind == RootCase::DoubleRoot && zero_root) {
            EXPECT_EQ(d.roots.kind, RootCase::Linear);
            EXPECT_EQ(d.effective.e2, 0.0);  // constant polynomial
        } else if (zero_root) {
            EXPECT_EQ(d.roots.kind, RootCase::Linear);
            EXPECT_EQ(d.roots.linear, LinearKind::ShiftedGbm);
        } else if (c.roots.kind == RootCase::TwoRealRoots) {
            ASSERT_EQ(d.roots.kind, RootCase::TwoRealRoots);
            // reciprocal roots
            const std::vector<double> dr = roots_of(d);
            for (double r : roots) {
                const double inv = 1.0 / r;
                const double best = std::min(std::abs(dr[0] - inv), std::abs(dr[1] - inv));
                EXPECT_LE(best, 1e-9 * std::max(1.0, std::abs(inv)));
            }
        }
    }
}
