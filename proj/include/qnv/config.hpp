#pragma once

#include "qnv/claims.hpp"
#include "qnv/estimate.hpp"
#include "qnv/polynomial.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qnv {

/// Flat key=value run description. Keys carry a block prefix (model., claim.,
/// engine., output., defect.); '#' starts a comment; unknown keys are rejected.
struct RunConfig {
    PolynomialSpec model;

    struct Claim {
        /// unit | identity | call | put | digital | table | barrier
        std::string payoff = "identity";
        double strike = 1.0;
        double cap = std::numeric_limits<double>::infinity();
        double barrier = std::numeric_limits<double>::quiet_NaN();
        /// terminal payoff of a barrier claim
        std::string inner = "identity";
        std::vector<std::pair<double, double>> table;
        double table_at_infinity = 0.0;
        /// dollar | joint (adds the euro leg h / X_T)
        std::string legs = "dollar";
        double T = 1.0;
    } claim;

    struct Engine {
        /// transform | euler | gbm-dual | all
        std::string estimator = "transform";
        /// stopped (X, absorbed at zero) | unstopped (Y)
        std::string process = "stopped";
        std::size_t n_paths = 100000;
        std::size_t n_steps = 0;
        double dt = 1e-4;
        std::optional<std::uint64_t> seed;
        bool weight_control = true;
        double step_budget = 5e10;
    } engine;

    struct Output {
        /// json | csv; empty leaves the choice to the command
        std::string format;
        std::string path;
    } output;

    std::vector<double> defect_horizons;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Canonical text of a config; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& config);

/// Terminal payoff named by `kind` with the claim block's parameters.
TerminalPayoff terminal_payoff(const RunConfig::Claim& claim, const std::string& kind);

/// Claim described by the claim block (euro leg included when legs = joint).
ClaimSpec build_claim(const RunConfig::Claim& claim);

McParams mc_params(const RunConfig& config, unsigned threads);

} // namespace qnv
