#include "qnv/martingality.hpp"

#include "qnv/errors.hpp"
#include "qnv/gbm_duality.hpp"

#include <cmath>

namespace qnv {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

MartingalityReport classify_martingality(const PolynomialSpec& spec) {
    const Classification cls = classify(spec);
    const RootProfile& rp = cls.roots;
    const double y0 = spec.y0;
    MartingalityReport rep;

    if (cls.effective.e1 == 0.0) {
        rep.y_is_true_martingale = rep.x_is_true_martingale = true;
        rep.reason = "e1 = 0";
        return rep;
    }
    switch (rp.kind) {
    case RootCase::DoubleRoot:
        rep.y_is_true_martingale = rp.at_root;
        rep.x_is_true_martingale = rp.at_root || y0 <= rp.r1;
        rep.reason = rp.at_root ? "double root at y0" : (rep.x_is_true_martingale ? "double root above x0" : "double root below x0");
        break;
    case RootCase::TwoRealRoots:
        // a boundary start is the constant process: closed interval
        rep.y_is_true_martingale = rp.at_root || rp.position == RootPosition::Inside;
        rep.x_is_true_martingale = rp.at_root || y0 <= rp.r2;
        if (rep.y_is_true_martingale)
            rep.reason = "y0 in [r1, r2]";
        else if (rep.x_is_true_martingale)
            rep.reason = "y0 < r1: root above x0";
        else
            rep.reason = "y0 > r2: no root above x0";
        break;
    case RootCase::ComplexRoots:
        rep.reason = "no real roots, e1 != 0";
        break;
    case RootCase::Linear: break;
    }
    if (rp.kind == RootCase::TwoRealRoots)
        rep.defect_at = [spec](double T) { return martingale_defect(spec, T); };
    return rep;
}

bool x_true_martingale_via_dual(const PolynomialSpec& spec) {
    const PolynomialSpec dual = dual_polynomial(spec);
    const Classification dcls = classify(dual);
    const PolynomialSpec& d = dcls.effective;
    if (d.e1 == 0.0 && d.e2 == 0.0 && d.e3 == 0.0)
        return true;  // every point is a root
    const double limit = (1.0 / spec.y0) * (1.0 + 1e-12);
    for (double r : roots_of(dcls))
        if (r >= -1e-15 && r <= limit)
            return true;
    return false;
}

double martingale_defect(const PolynomialSpec& spec, double T) {
    const Classification cls = classify(spec);
    QNV_REQUIRE(cls.roots.kind == RootCase::TwoRealRoots, CaseError,
                "closed-form defect needs two distinct real roots");
    QNV_REQUIRE(T >= 0.0, DomainError, "horizon must be nonnegative");
    if (cls.roots.at_root || cls.roots.position == RootPosition::Inside)
        return 0.0;
    return (spec.y0 - cls.roots.r1) * (1.0 - survival_probability(spec, T));
}

double defect_inverse_bessel(double x0, double T) {
    QNV_REQUIRE(x0 > 0.0 && T > 0.0, DomainError, "need x0 > 0 and T > 0");
    // E[X_T] = x0 Q(max_{t<=T} W_t < 1/x0)
    return x0 - x0 * (2.0 * normal_cdf(1.0 / (x0 * std::sqrt(T))) - 1.0);
}

} // namespace qnv
