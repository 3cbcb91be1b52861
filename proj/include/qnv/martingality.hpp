#pragma once

#include "qnv/polynomial.hpp"

#include <functional>
#include <string>

namespace qnv {

struct MartingalityReport {
    bool y_is_true_martingale = false;
    bool x_is_true_martingale = false;
    /// Which branch of the classification applied.
    std::string reason;
    /// T -> y0 - E[Y_T]; set only when P has two distinct real roots.
    std::function<double(double)> defect_at;
};

MartingalityReport classify_martingality(const PolynomialSpec& spec);

/// Martingality of X read off the dual polynomial: X is a true martingale iff
/// -e3 z^2 - e2 z - e1 has a real root in [0, 1/x0].
bool x_true_martingale_via_dual(const PolynomialSpec& spec);

/// y0 - E[Y_T] = (y0 - r1) Q(tau <= T) for two distinct real roots. CaseError otherwise.
double martingale_defect(const PolynomialSpec& spec, double T);

/// x0 - E[X_T] for P(z) = z^2 (reciprocal of a 3d Bessel process started at 1/x0).
double defect_inverse_bessel(double x0, double T);

double normal_cdf(double x) noexcept;

} // namespace qnv
