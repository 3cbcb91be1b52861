#include "qnv/polynomial.hpp"

#include "qnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace qnv {

double zero_tolerance(const PolynomialSpec& spec) noexcept {
    return 1e-12 * std::max({1.0, std::abs(spec.e2), std::abs(spec.e3)});
}

void validate(const PolynomialSpec& spec) {
    QNV_REQUIRE(std::isfinite(spec.e1) && std::isfinite(spec.e2) && std::isfinite(spec.e3),
                InvalidSpec, "polynomial coefficients must be finite");
    QNV_REQUIRE(std::isfinite(spec.y0) && spec.y0 > 0.0, InvalidSpec,
                "initial value y0 must be finite and positive");
}

double discriminant_constant(const PolynomialSpec& spec) noexcept {
    return spec.e1 * spec.e3 - spec.e2 * spec.e2 / 4.0;
}

double eval_P(const PolynomialSpec& spec, double z) noexcept {
    return (spec.e1 * z + spec.e2) * z + spec.e3;
}

namespace {

bool near(double x, double r) noexcept {
    return std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(r));
}

} // namespace

Classification classify(const PolynomialSpec& spec) {
    validate(spec);
    Classification out;
    out.spec = spec;
    PolynomialSpec eff = spec;
    const double tol = zero_tolerance(spec);

    if (std::abs(eff.e1) <= tol)
        eff.e1 = 0.0;
    double C = discriminant_constant(eff);
    if (std::abs(C) <= tol) {
        C = 0.0;
        // with e1 == 0, C == -e2^2/4 so a vanishing C means a vanishing e2
        if (eff.e1 == 0.0)
            eff.e2 = 0.0;
    }
    if (eff.e1 == 0.0 && eff.e2 == 0.0 && std::abs(eff.e3) <= tol)
        eff.e3 = 0.0;

    DerivedConstants& k = out.constants;
    RootProfile& rp = out.roots;
    k.C = C;
    k.mu0 = eff.e1 * eff.y0 + eff.e2 / 2.0;
    k.sqrt_abs_C = std::sqrt(std::abs(C));
    k.c = std::numeric_limits<double>::quiet_NaN();
    const double y0 = eff.y0;

    if (eff.e1 == 0.0) {
        rp.kind = RootCase::Linear;
        if (eff.e2 != 0.0) {
            rp.linear = LinearKind::ShiftedGbm;
            rp.r1 = rp.r2 = -eff.e3 / eff.e2;
            rp.at_root = near(y0, rp.r1);
        } else if (eff.e3 != 0.0) {
            rp.linear = LinearKind::ArithmeticBm;
        } else {
            rp.linear = LinearKind::Constant;
            rp.at_root = true;
        }
        rp.position = rp.at_root ? RootPosition::AtRoot : RootPosition::Outside;
    } else if (C == 0.0) {
        rp.kind = RootCase::DoubleRoot;
        rp.r1 = rp.r2 = -eff.e2 / (2.0 * eff.e1);
        rp.at_root = near(y0, rp.r1);
        rp.position = rp.at_root ? RootPosition::AtRoot : RootPosition::Outside;
    } else if (C < 0.0) {
        rp.kind = RootCase::TwoRealRoots;
        const double s = k.sqrt_abs_C;
        double r1 = (-eff.e2 / 2.0 - s) / eff.e1;
        double r2 = (-eff.e2 / 2.0 + s) / eff.e1;
        if (r1 > r2)
            std::swap(r1, r2);
        rp.r1 = r1;
        rp.r2 = r2;
        if (near(y0, r1) || near(y0, r2)) {
            rp.position = RootPosition::AtRoot;
            rp.at_root = true;
        } else if (r1 < y0 && y0 < r2) {
            rp.position = RootPosition::Inside;
            k.c = std::atanh(-k.mu0 / s);
            k.has_c = true;
        } else {
            rp.position = RootPosition::Outside;
            const double u = -k.mu0 / s;
            k.c = 0.5 * std::log((u + 1.0) / (u - 1.0));
            k.has_c = true;
        }
    } else {
        rp.kind = RootCase::ComplexRoots;
        k.c = std::atan(-k.mu0 / k.sqrt_abs_C);
        k.has_c = true;
    }
    // avoid printing -0 for a root at zero
    rp.r1 += 0.0;
    rp.r2 += 0.0;
    out.effective = eff;
    return out;
}

PolynomialSpec dual_polynomial(const PolynomialSpec& spec) {
    validate(spec);
    return {-spec.e3, -spec.e2, -spec.e1, 1.0 / spec.y0};
}

std::vector<double> roots_of(const Classification& cls) {
    const RootProfile& rp = cls.roots;
    switch (rp.kind) {
    case RootCase::Linear:
        if (rp.linear == LinearKind::ShiftedGbm)
            return {rp.r1};
        return {};
    case RootCase::DoubleRoot: return {rp.r1};
    case RootCase::TwoRealRoots: return {rp.r1, rp.r2};
    case RootCase::ComplexRoots: return {};
    }
    return {};
}

std::string describe(const RootProfile& rp) {
    auto pos = [&] {
        switch (rp.position) {
        case RootPosition::Inside: return "inside";
        case RootPosition::AtRoot: return "at-root";
        case RootPosition::Outside: return "outside";
        }
        return "";
    };
    switch (rp.kind) {
    case RootCase::Linear:
        switch (rp.linear) {
        case LinearKind::Constant: return "Linear/constant";
        case LinearKind::ArithmeticBm: return "Linear/arithmetic-BM";
        case LinearKind::ShiftedGbm: return fmt::format("Linear/shifted-GBM root={:.17g}", rp.r1);
        }
        break;
    case RootCase::DoubleRoot: return fmt::format("DoubleRoot r={:.17g}", rp.r1);
    case RootCase::TwoRealRoots:
        return fmt::format("TwoRealRoots r1={:.17g} r2={:.17g} ({})", rp.r1, rp.r2, pos());
    case RootCase::ComplexRoots: return "ComplexRoots";
    }
    return "";
}

} // namespace qnv
