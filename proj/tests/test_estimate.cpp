#include "qnv/errors.hpp"
#include "qnv/estimate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace qnv;

TEST(Summary, MeanErrorAndInterval) {
    const std::vector<double> xs = {1, 2, 3, 4};
    const PriceEstimate e = summarize(xs, 9, "test");
    EXPECT_EQ(e.mean, 2.5);
    EXPECT_DOUBLE_EQ(e.std_error, std::sqrt((1.5 * 1.5 * 2 + 0.5 * 0.5 * 2) / 3.0 / 4.0));
    EXPECT_DOUBLE_EQ(e.ci95_lo, e.mean - 1.96 * e.std_error);
    EXPECT_DOUBLE_EQ(e.ci95_hi, e.mean + 1.96 * e.std_error);
    EXPECT_EQ(e.n_paths, 4u);
    EXPECT_EQ(e.seed, 9u);
}

TEST(Summary, PairwiseSumIsAccurate) {
    std::vector<double> xs(1 << 20, 0.1);
    EXPECT_NEAR(pairwise_sum(xs), 0.1 * xs.size(), 1e-9);
}

TEST(Summary, ControlVariateMakesUnitPayoffExact) {
    std::mt19937_64 rng(3);
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(10000);
    for (auto& x : w)
        x = ex(rng);
    const PriceEstimate e = summarize_weighted(w, w, true, 0, "test");
    EXPECT_NEAR(e.mean, 1.0, 1e-13);
    EXPECT_LT(e.std_error, 1e-13);
    const PriceEstimate plain = summarize_weighted(w, w, false, 0, "test");
    EXPECT_GT(plain.std_error, 1e-3);
}

TEST(Summary, ControlCoefficientOfConstantWeightIsZero) {
    const std::vector<double> y = {1, 2, 3};
    const std::vector<double> w = {1, 1, 1};
    EXPECT_EQ(control_coefficient(y, w), 0.0);
}

TEST(Budget, RejectsOversizedRuns) {
    McParams mc;
    mc.n_paths = 1000;
    mc.step_budget = 1e5;
    try {
        check_budget(mc, 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceError);
    }
    EXPECT_NO_THROW(check_budget(mc, 100));
}

TEST(Steps, DefaultIs512PerUnitTime) {
    McParams mc;
    EXPECT_EQ(resolve_steps(mc, 1.0), 512u);
    EXPECT_EQ(resolve_steps(mc, 0.25), 128u);
    mc.n_steps = 7;
    EXPECT_EQ(resolve_steps(mc, 3.0), 7u);
}

TEST(Parallel, EveryIndexOnceForAnyThreadCount) {
    for (unsigned t : {1u, 2u, 3u, 8u}) {
        std::vector<int> hits(1001, 0);
        parallel_for(hits.size(), t, [&](std::size_t i) { hits[i] += 1; });
        EXPECT_EQ(std::accumulate(hits.begin(), hits.end(), 0), 1001);
        EXPECT_EQ(*std::min_element(hits.begin(), hits.end()), 1);
    }
}

TEST(Parallel, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 57)
                                      throw Error(ErrorKind::NonFinitePayoff, "boom");
                              }),
                 Error);
}
