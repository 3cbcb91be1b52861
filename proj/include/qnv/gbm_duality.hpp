#pragma once

#include "qnv/claims.hpp"
#include "qnv/estimate.hpp"
#include "qnv/polynomial.hpp"

#include <cstdint>
#include <vector>

namespace qnv {

/// Two-root QNV model written through the (possibly negative) geometric Brownian
/// motion Z with dZ/Z = sigma dB, Z_0 = (y0 - r2)/(y0 - r1), and Y = (r2 - r1 Z)/(1 - Z)
/// under the measure with density (y0 - r1)/(r2 - r1) (1 - Z_T) 1{tau > T}.
struct GbmDualSpec {
    double sigma = 0.0;  ///< e1 (r2 - r1)
    double z0 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double e1 = 0.0;
    double y0 = 0.0;

    /// (r2 - r1 z) / (1 - z)
    double level(double z) const noexcept { return (r2 - r1 * z) / (1.0 - z); }
    /// (y0 - r1)/(r2 - r1) (1 - z)
    double density(double z) const noexcept { return (y0 - r1) / (r2 - r1) * (1.0 - z); }
};

/// CaseError unless P has two distinct real roots and y0 is not one of them.
GbmDualSpec make_gbm_dual(const PolynomialSpec& spec);

/// P(sup_{t <= T} (drift t + vol B_t) >= level) for level > 0; mirrored for level < 0.
double drifted_bm_hit_probability(double level, double drift, double vol, double T);

/// Q(tau > T) for the first hitting time of 1 by Z; 1 when z0 < 0.
double survival_probability(const PolynomialSpec& spec, double T);

struct GbmDualPath {
    std::vector<double> z;     ///< Z at the grid times
    std::vector<double> level; ///< (r2 - r1 Z)/(1 - Z)
    bool survived = true;
    double z_min = 0.0, z_max = 0.0;
};

GbmDualPath simulate_gbm_dual_path(const GbmDualSpec& dual, std::uint64_t seed, std::uint64_t index,
                                   double T, std::size_t n_steps);

PriceEstimate gbm_price(const PolynomialSpec& spec, const ClaimSpec& claim, const McParams& mc);

} // namespace qnv
