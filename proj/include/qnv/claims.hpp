#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qnv {

/// What a payoff sees of a simulated path: values at the grid times plus the
/// continuous-time extrema implied by the Brownian-bridge sampling.
struct PathView {
    std::span<const double> times;
    std::span<const double> values;
    double path_min = 0.0;
    double path_max = 0.0;

    double terminal() const { return values.back(); }
};

/// Nonnegative functional of a path; may return +infinity.
using Payoff = std::function<double(const PathView&)>;

/// Claim over [0, T]; the euro leg is optional and must agree with dollar / X_T
/// wherever 0 < X_T < infinity.
struct ClaimSpec {
    double T = 1.0;
    Payoff dollar;
    Payoff euro;
    std::string label;
};

/// Terminal payoff x -> h(x) on [0, infinity], with the registry used by the CLI.
class TerminalPayoff {
public:
    enum class Kind { Unit, Identity, Call, Put, Digital, Table };

    static TerminalPayoff unit();
    static TerminalPayoff identity();
    /// (x - K)^+, optionally capped at `cap`.
    static TerminalPayoff call(double strike, double cap = std::numeric_limits<double>::infinity());
    static TerminalPayoff put(double strike);
    /// 1{x > K}
    static TerminalPayoff digital(double strike);
    /// Piecewise linear through (x, v) nodes, flat outside; `at_infinity` is h(+inf).
    static TerminalPayoff table(std::vector<std::pair<double, double>> nodes, double at_infinity);

    double operator()(double x) const;
    /// lim h(x)/x as x -> infinity: the euro value of the claim at hyperinflation.
    double euro_at_infinity() const;
    /// h(x)/x on (0, inf), euro_at_infinity() at inf and 0 at x = 0.
    double euro(double x) const;

    Kind kind() const noexcept { return kind_; }
    std::string label() const;

private:
    Kind kind_ = Kind::Unit;
    double strike_ = 0.0;
    double cap_ = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> nodes_;
    double at_inf_ = 0.0;
};

/// Claim paying h(X_T) in dollars; with `with_euro`, the euro leg h(X_T)/X_T.
ClaimSpec terminal_claim(const TerminalPayoff& h, double T, bool with_euro = false);

/// Down-and-in barrier: pays h(X_T) if the path reached L (continuous monitoring).
ClaimSpec down_and_in_claim(const TerminalPayoff& h, double barrier, double T);

/// 1{min_t X_t > level}
ClaimSpec survival_claim(double level, double T);

} // namespace qnv
