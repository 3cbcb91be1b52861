#pragma once

#include "qnv/brownian_engine.hpp"
#include "qnv/claims.hpp"
#include "qnv/closed_forms.hpp"
#include "qnv/estimate.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qnv {

/// X and its reciprocal 1/X as two QNV processes driven by the same Brownian motion.
/// `reciprocal` is 1/f on the primal coordinates; `dual` is the map built directly
/// from the dual polynomial (same function where both are defined).
struct DualModel {
    PolynomialSpec primal_spec;
    PolynomialSpec dual_spec;
    ClosedFormMap primal;
    ClosedFormMap reciprocal;
    ClosedFormMap dual;
};

DualModel make_dual_model(const PolynomialSpec& spec);

/// Stopped outcomes of one path under the primal and the dual map.
/// Zeros of one are explosions of the other, so the event steps coincide.
struct SwapOutcome {
    PathOutcome primal;
    PathOutcome dual;
    bool swapped() const noexcept;
};

SwapOutcome swap_outcomes(const DualModel& model, const PathGrid& path);

/// Both sides of E~[(1/X_T) H 1{X_T < inf}] = E[H 1{X_T > 0}] / x0, where the left
/// side is simulated through the dual model and the right side through the primal.
struct FoellmerResult {
    PriceEstimate dual_side;
    PriceEstimate primal_side;
    double difference = 0.0;
};

FoellmerResult foellmer_expectation(const PolynomialSpec& spec, const Payoff& H, double T,
                                    const McParams& mc);

/// Terminal function h on [0, inf]; must accept +infinity.
using ScalarPayoff = std::function<double(double)>;

struct SymmetryResult {
    PriceEstimate lhs;  ///< E[h(X_T / L)]
    PriceEstimate rhs;  ///< E[h(L / X_T) X_T / L]
    double z = 0.0;
};

/// SpecShapeError unless e3 = e1 L^2 and y0 = L (relative 1e-10).
void require_symmetric_shape(const PolynomialSpec& spec, double L, bool at_barrier = true);

SymmetryResult symmetry_check(const PolynomialSpec& spec, const ScalarPayoff& h, double L, double T,
                              const McParams& mc);

/// Semi-static hedge of the down-and-in claim h(X_T / L) 1{min X <= L} for x0 > L.
struct HedgePosition {
    std::string label;
    ScalarPayoff payoff;  ///< terminal payoff in X_T
    bool initial = true;  ///< held from inception (else bought at the barrier)
    bool sold_at_barrier = false;
};

struct HedgePlan {
    PolynomialSpec spec;
    double L = 1.0;
    double T = 1.0;
    ScalarPayoff h;
    std::vector<HedgePosition> positions;

    /// Terminal value of the hedge on a path ending at x_T that did (not) touch L.
    double hedge_value(double x_T, bool hit) const;
    /// Terminal value of the barrier claim.
    double target_value(double x_T, bool hit) const;
};

HedgePlan semistatic_hedge_plan(const PolynomialSpec& spec, const ScalarPayoff& h, double L, double T);

struct ReplicationReport {
    std::size_t paths = 0;
    std::size_t hits = 0;
    double max_abs_error = 0.0;
};

/// Pathwise bookkeeping: hedge_value == target_value on simulated surviving paths.
ReplicationReport verify_replication(const HedgePlan& plan, std::size_t n_paths, std::uint64_t seed);

struct HedgePrices {
    PriceEstimate barrier;     ///< E[h(X_T/L) 1{hit}]
    PriceEstimate initial;     ///< E[position 1 + position 2]
    SymmetryResult at_barrier; ///< positions 2 and 3 priced from x0 = L
};

HedgePrices price_hedge(const HedgePlan& plan, const McParams& mc);

/// Minimal joint replicating price of a claim with a dollar and a euro leg:
/// total = term1 + x0 * term2, with term2 the hyperinflation contribution.
struct JointPriceResult {
    PriceEstimate total;
    PriceEstimate term1;
    PriceEstimate term2;
    std::size_t hyperinflation_paths = 0;
};

JointPriceResult joint_price(const PolynomialSpec& spec, const ClaimSpec& joint, const McParams& mc);

} // namespace qnv
