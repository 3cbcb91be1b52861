#pragma once

#include "qnv/claims.hpp"
#include "qnv/estimate.hpp"
#include "qnv/polynomial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qnv {

/// Euler-Maruyama discretisation of dY = P(Y) dB.
///
/// Values are recorded on the base grid of step `dt`. Inside a base step the
/// scheme refines adaptively so that one increment never moves Y by more than
/// `max_relative_move * max(1, |Y|)` standard deviations; without this the
/// quadratic volatility makes the scheme blow up long before the diffusion does.
struct EulerParams {
    double dt = 1e-4;
    std::size_t n_paths = 100000;
    std::uint64_t seed = 0;
    bool absorb_at_zero = true;
    /// Truncation level; 0 selects 1e6 * max(1, y0).
    double cap = 0.0;
    enum class Explosion { Kill, Freeze };
    /// Kill: a path reaching the cap pays 0. Freeze: it is held at the cap.
    Explosion explosion = Explosion::Kill;
    double max_relative_move = 0.05;
    unsigned threads = 1;
    double step_budget = 5e10;
    /// Substeps allowed inside one base step before the path counts as exploded.
    std::size_t max_substeps = 1u << 22;
};

struct EulerReport {
    PriceEstimate estimate;
    std::size_t exploded = 0;
    std::size_t absorbed = 0;
    /// Set when exploded paths were frozen at the cap and contributed a payoff.
    bool cap_bias_warning = false;
};

EulerReport euler_run(const PolynomialSpec& spec, const ClaimSpec& claim, const EulerParams& params);

PriceEstimate euler_price(const PolynomialSpec& spec, const ClaimSpec& claim, const EulerParams& params);

/// Plain (non-adaptive) Euler path driven by given Brownian increments of step dt;
/// returns Y at the grid times. Absorption at zero as in euler_run.
std::vector<double> euler_path(const PolynomialSpec& spec, std::span<const double> increments,
                               bool absorb_at_zero);

} // namespace qnv
