#include "qnv/closed_forms.hpp"

#include "qnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace qnv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;

double signed_inf(double sign) { return sign < 0.0 ? -kInf : kInf; }

double arccoth(double u) { return 0.5 * std::log((u + 1.0) / (u - 1.0)); }

} // namespace

const char* to_string(MapCase kind) noexcept {
    switch (kind) {
    case MapCase::Constant: return "constant";
    case MapCase::Linear: return "linear";
    case MapCase::ShiftedGbm: return "shifted-gbm";
    case MapCase::DoubleRoot: return "double-root";
    case MapCase::Tanh: return "tanh";
    case MapCase::Coth: return "coth";
    case MapCase::Tan: return "tan";
    }
    return "";
}

ClosedFormMap ClosedFormMap::build(const PolynomialSpec& spec) {
    ClosedFormMap m;
    m.cls_ = classify(spec);
    const PolynomialSpec& e = m.cls_.effective;
    const DerivedConstants& k = m.cls_.constants;
    const RootProfile& rp = m.cls_.roots;
    m.poly_ = e;
    m.base_ = e;
    m.base_f0_ = e.y0;
    m.C_ = k.C;
    m.mu0_ = k.mu0;
    m.s_ = k.sqrt_abs_C;
    m.c_ = k.has_c ? k.c : 0.0;
    m.base_a_ = -kInf;
    m.base_b_ = kInf;
    const double f0 = e.y0;

    if (rp.at_root) {
        m.kind_ = MapCase::Constant;
        // keep exp(C t/2) exp(-mu0 x) an exact martingale: C == -mu0^2
        m.mu0_ = m.C_ < 0.0 ? std::copysign(m.s_, k.mu0) : 0.0;
        m.fa_ = m.fb_ = f0;
    } else if (rp.kind == RootCase::Linear) {
        if (rp.linear == LinearKind::ArithmeticBm) {
            m.kind_ = MapCase::Linear;
            m.fa_ = signed_inf(-e.e3);
            m.fb_ = signed_inf(e.e3);
        } else {
            m.kind_ = MapCase::ShiftedGbm;
            const double A = f0 + e.e3 / e.e2;
            const double B = -e.e3 / e.e2;
            m.r_ = B;
            m.fa_ = e.e2 > 0.0 ? B : signed_inf(A);
            m.fb_ = e.e2 > 0.0 ? signed_inf(A) : B;
        }
    } else if (rp.kind == RootCase::DoubleRoot) {
        m.kind_ = MapCase::DoubleRoot;
        m.r_ = rp.r1;
        // mu0 = e1 (f0 - r) vanishes only at the root, which is the Constant case
        QNV_REQUIRE(m.mu0_ != 0.0, CaseError, "double-root map with mu0 == 0 away from the root");
        const double edge = 1.0 / m.mu0_;
        const double at_edge = signed_inf(f0 - m.r_);
        if (m.mu0_ > 0.0) {
            m.base_b_ = edge;
            m.fa_ = m.r_;
            m.fb_ = at_edge;
        } else {
            m.base_a_ = edge;
            m.fa_ = at_edge;
            m.fb_ = m.r_;
        }
    } else if (rp.kind == RootCase::TwoRealRoots) {
        const double lo = m.s_ / e.e1 - e.e2 / (2.0 * e.e1);
        const double hi = -m.s_ / e.e1 - e.e2 / (2.0 * e.e1);
        if (rp.position == RootPosition::Inside) {
            m.kind_ = MapCase::Tanh;
            m.fa_ = lo;
            m.fb_ = hi;
        } else {
            m.kind_ = MapCase::Coth;
            m.pole_ = -m.c_ / m.s_;
            if (m.pole_ > 0.0) {
                m.base_b_ = m.pole_;
                m.fa_ = lo;
                m.fb_ = signed_inf(e.e1);
            } else {
                m.base_a_ = m.pole_;
                m.fa_ = signed_inf(-e.e1);
                m.fb_ = hi;
            }
        }
    } else {
        m.kind_ = MapCase::Tan;
        m.base_a_ = (m.c_ - kHalfPi) / m.s_;
        m.base_b_ = (m.c_ + kHalfPi) / m.s_;
        m.fa_ = signed_inf(-e.e1);
        m.fb_ = signed_inf(e.e1);
    }
    m.a_ = m.base_a_;
    m.b_ = m.base_b_;
    m.base_fa_ = m.fa_;
    m.base_fb_ = m.fb_;

    const double lo = std::min(m.fa_, m.fb_);
    const double hi = std::max(m.fa_, m.fb_);
    if (m.kind_ != MapCase::Constant && lo < 0.0 && 0.0 < hi)
        m.zero_ = m.base_invert(0.0);
    return m;
}

double ClosedFormMap::mu0() const noexcept {
    if (!reciprocal_)
        return mu0_;
    return poly_.e1 * f0() + poly_.e2 / 2.0;
}

void ClosedFormMap::check_domain(double x) const {
    if (!(a_ <= x && x <= b_))
        throw Error(ErrorKind::DomainError,
                    fmt::format("x={} outside closed domain [{}, {}]", x, a_, b_));
}

double ClosedFormMap::base_f(double x) const {
    const PolynomialSpec& e = base_;
    if (x == base_a_)
        return base_fa_;
    if (x == base_b_)
        return base_fb_;
    switch (kind_) {
    case MapCase::Constant: return base_f0_;
    case MapCase::Linear: return e.e3 * x + base_f0_;
    case MapCase::ShiftedGbm: return (base_f0_ + e.e3 / e.e2) * std::exp(e.e2 * x) - e.e3 / e.e2;
    case MapCase::DoubleRoot: return (base_f0_ - r_) / (1.0 - mu0_ * x) + r_;
    case MapCase::Tanh: return -s_ / e.e1 * std::tanh(s_ * x + c_) - e.e2 / (2.0 * e.e1);
    case MapCase::Coth: return -s_ / e.e1 / std::tanh(s_ * (x - pole_)) - e.e2 / (2.0 * e.e1);
    case MapCase::Tan: {
        const double y = -s_ * x + c_;
        double t;
        if (y > std::numbers::pi / 4.0)
            t = 1.0 / std::tan(s_ * (x - base_a_));
        else if (y < -std::numbers::pi / 4.0)
            t = -1.0 / std::tan(s_ * (base_b_ - x));
        else
            t = std::tan(y);
        return -s_ / e.e1 * t - e.e2 / (2.0 * e.e1);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double ClosedFormMap::base_g(double x) const {
    const PolynomialSpec& e = base_;
    if ((x == base_a_ && std::isfinite(base_a_)) || (x == base_b_ && std::isfinite(base_b_)))
        return 0.0;
    switch (kind_) {
    case MapCase::Constant: return std::exp(-mu0_ * x);
    case MapCase::Linear: return 1.0;
    case MapCase::ShiftedGbm: return std::exp(-e.e2 * x / 2.0);
    case MapCase::DoubleRoot: return 1.0 - mu0_ * x;
    case MapCase::Tanh: return std::cosh(s_ * x + c_) / std::cosh(c_);
    case MapCase::Coth: return std::sinh(s_ * (x - pole_)) / std::sinh(c_);
    case MapCase::Tan: {
        const double y = -s_ * x + c_;
        double cy;
        if (y > std::numbers::pi / 4.0)
            cy = std::sin(s_ * (x - base_a_));
        else if (y < -std::numbers::pi / 4.0)
            cy = std::sin(s_ * (base_b_ - x));
        else
            cy = std::cos(y);
        return cy / std::cos(c_);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double ClosedFormMap::base_gf(double x) const {
    const PolynomialSpec& e = base_;
    switch (kind_) {
    case MapCase::DoubleRoot: return (base_f0_ - r_) + r_ * (1.0 - mu0_ * x);
    case MapCase::Coth: {
        const double arg = s_ * (x - pole_);
        return (-s_ / e.e1 * std::cosh(arg) - e.e2 / (2.0 * e.e1) * std::sinh(arg)) / std::sinh(c_);
    }
    case MapCase::Tan: {
        const double y = -s_ * x + c_;
        return (-s_ / e.e1 * std::sin(y) - e.e2 / (2.0 * e.e1) * std::cos(y)) / std::cos(c_);
    }
    default: return base_g(x) * base_f(x);
    }
}

double ClosedFormMap::f(double x) const {
    check_domain(x);
    if (!reciprocal_)
        return base_f(x);
    if (x == a_)
        return fa_;
    if (x == b_)
        return fb_;
    const double v = base_f(x);
    if (std::isinf(v))
        return 0.0;
    if (v == 0.0)
        return kInf;
    return 1.0 / v;
}

double ClosedFormMap::g(double x) const {
    check_domain(x);
    if (!reciprocal_)
        return base_g(x);
    if ((x == a_ && a_ != base_a_) || (x == b_ && b_ != base_b_))
        return 0.0;
    return base_gf(x) / base_f0_;
}

double ClosedFormMap::gf(double x) const {
    check_domain(x);
    if (!reciprocal_)
        return base_gf(x);
    // (g f / f0) * (1 / f) = g / f0
    return base_g(x) / base_f0_;
}

double ClosedFormMap::mu(double x) const {
    const double v = f(x);
    return poly_.e1 * v + poly_.e2 / 2.0;
}

double ClosedFormMap::f_prime(double x) const { return eval_P(poly_, f(x)); }

double ClosedFormMap::base_invert(double y) const {
    const PolynomialSpec& e = base_;
    double x = std::numeric_limits<double>::quiet_NaN();
    switch (kind_) {
    case MapCase::Constant:
        if (y == base_f0_)
            x = 0.0;
        break;
    case MapCase::Linear: x = (y - base_f0_) / e.e3; break;
    case MapCase::ShiftedGbm: {
        const double ratio = (y + e.e3 / e.e2) / (base_f0_ + e.e3 / e.e2);
        if (ratio > 0.0)
            x = std::log(ratio) / e.e2;
        break;
    }
    case MapCase::DoubleRoot:
        if (y != r_)
            x = (1.0 - (base_f0_ - r_) / (y - r_)) / mu0_;
        break;
    case MapCase::Tanh: {
        const double u = -(y + e.e2 / (2.0 * e.e1)) * e.e1 / s_;
        if (std::abs(u) < 1.0)
            x = (std::atanh(u) - c_) / s_;
        break;
    }
    case MapCase::Coth: {
        const double u = -(y + e.e2 / (2.0 * e.e1)) * e.e1 / s_;
        if (std::abs(u) > 1.0)
            x = pole_ + arccoth(u) / s_;
        break;
    }
    case MapCase::Tan: {
        const double u = -(y + e.e2 / (2.0 * e.e1)) * e.e1 / s_;
        x = (c_ - std::atan(u)) / s_;
        break;
    }
    }
    return x;
}

double ClosedFormMap::invert_f(double y) const {
    QNV_REQUIRE(!std::isnan(y), RangeError, "cannot invert NaN");
    if (std::isinf(y)) {
        if (fa_ == y && std::isfinite(a_))
            return a_;
        if (fb_ == y && std::isfinite(b_))
            return b_;
        throw Error(ErrorKind::RangeError, fmt::format("value {} is not attained at a finite end", y));
    }
    const double base_y = reciprocal_ ? 1.0 / y : y;
    const double x = base_invert(base_y);
    if (!(std::isfinite(x) && a_ < x && x < b_))
        throw Error(ErrorKind::RangeError,
                    fmt::format("value {} outside the range of f on ({}, {})", y, a_, b_));
    return x;
}

std::string ClosedFormMap::describe() const {
    return fmt::format("{}{} on (a,b)=({:.17g}, {:.17g})", reciprocal_ ? "reciprocal " : "",
                       to_string(kind_), a_, b_);
}

ClosedFormMap reciprocal_map(const ClosedFormMap& map) {
    QNV_REQUIRE(!map.reciprocal_, CaseError, "map is already a reciprocal");
    QNV_REQUIRE(map.base_f0_ != 0.0, InvalidSpec, "reciprocal requires f0 != 0");
    ClosedFormMap r = map;
    r.reciprocal_ = true;
    r.poly_ = dual_polynomial(map.base_);
    r.zero_.reset();
    if (map.zero_.has_value()) {
        if (*map.zero_ < 0.0)
            r.a_ = *map.zero_;
        else
            r.b_ = *map.zero_;
    }
    auto inv = [](double v) {
        if (std::isinf(v))
            return 0.0;
        if (v == 0.0)
            return kInf;
        return 1.0 / v;
    };
    // 1/f keeps the sign of f0 up to the cut where f vanishes
    const double cut = std::copysign(kInf, map.base_f0_);
    r.fa_ = r.a_ == map.a_ ? inv(map.fa_) : cut;
    r.fb_ = r.b_ == map.b_ ? inv(map.fb_) : cut;
    return r;
}

ResidualReport ode_residuals(const ClosedFormMap& map, std::size_t n_points) {
    QNV_REQUIRE(n_points >= 2, DomainError, "need at least two grid points");
    const PolynomialSpec& e = map.classification().effective;
    const double s = map.classification().constants.sqrt_abs_C;
    // intrinsic length: where f or g changes by O(1) relative to itself
    const double rate = std::max({s, std::abs(e.e2), std::abs(map.mu0()),
                                  std::abs(e.e3) / std::max(1.0, std::abs(map.f0())), 1e-3});
    const double len = 1.0 / rate;
    const double lo = std::isfinite(map.a()) ? map.a() : -4.0 * len;
    const double hi = std::isfinite(map.b()) ? map.b() : 4.0 * len;
    ResidualReport rep;
    for (std::size_t k = 0; k < n_points; ++k) {
        const double x = lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(n_points);
        const double d = std::min({x - map.a(), map.b() - x, len});
        const double hf = 1e-4 * d;
        // g is smooth across the domain ends; a wide step keeps roundoff down
        const double hg = std::min(0.5 * d, 0.05 * len);
        const double fx = map.f(x);
        const double fd = (map.f(x + hf) - map.f(x - hf)) / (2.0 * hf);
        const double Pf = eval_P(map.polynomial(), fx);
        rep.f_residual = std::max(rep.f_residual, std::abs(fd - Pf) / (1.0 + std::abs(Pf)));
        const double gx = map.g(x);
        auto second = [&](double h) { return (map.g(x + h) - 2.0 * gx + map.g(x - h)) / (h * h); };
        const double gdd = (4.0 * second(0.5 * hg) - second(hg)) / 3.0;  // Richardson: O(h^4)
        rep.g_residual = std::max(rep.g_residual, std::abs(gdd + map.C() * gx) / (1.0 + std::abs(gx)));
        ++rep.points;
    }
    return rep;
}

} // namespace qnv
