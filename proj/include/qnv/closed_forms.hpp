#pragma once

#include "qnv/polynomial.hpp"

#include <optional>
#include <string>

namespace qnv {

enum class MapCase {
    Constant,    ///< P(y0) == 0
    Linear,      ///< e1 = e2 = 0: f(x) = e3 x + f0
    ShiftedGbm,  ///< e1 = 0, e2 != 0
    DoubleRoot,  ///< C = 0, e1 != 0
    Tanh,        ///< C < 0, y0 strictly between the roots
    Coth,        ///< C < 0, y0 outside the closed root interval
    Tan,         ///< C > 0
};

const char* to_string(MapCase kind) noexcept;

/// The triple (f, g, mu) turning stopped Brownian motion into a QNV process:
/// Y = f(W^tau) under the measure with density exp(C t / 2) g(W^tau_t).
///
/// f solves f' = P(f), f(0) = y0, and is finite and strictly monotone on (a, b);
/// g solves -g'' = C g with g(0) = 1, g'(0) = -mu0, and vanishes at finite ends.
/// A map can also represent the reciprocal 1/f of another map (see reciprocal_map),
/// in which case g is replaced by g f / f0 and the domain is cut at the zeros of f.
class ClosedFormMap {
public:
    static ClosedFormMap build(const PolynomialSpec& spec);

    MapCase kind() const noexcept { return kind_; }
    bool is_reciprocal() const noexcept { return reciprocal_; }
    /// Polynomial this map solves (the dual polynomial for a reciprocal map).
    const PolynomialSpec& polynomial() const noexcept { return poly_; }
    const Classification& classification() const noexcept { return cls_; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double C() const noexcept { return C_; }
    double f0() const noexcept { return reciprocal_ ? 1.0 / base_f0_ : base_f0_; }
    double mu0() const noexcept;
    double shift() const noexcept { return c_; }
    bool constant() const noexcept { return kind_ == MapCase::Constant; }

    /// f on the closed domain; signed infinity at finite ends.
    double f(double x) const;
    /// g on the closed domain; zero at finite ends of a non-reciprocal map.
    double g(double x) const;
    double mu(double x) const;
    /// f'(x) = P(f(x)).
    double f_prime(double x) const;
    /// g(x) f(x) evaluated in a form that stays finite at the domain ends.
    double gf(double x) const;

    /// Limits of f at the ends of the domain (finite or signed infinity).
    double f_at_a() const noexcept { return fa_; }
    double f_at_b() const noexcept { return fb_; }

    /// Unique x in (a, b) with f(x) = y.
    double invert_f(double y) const;

    /// Point of (a, b) where f vanishes, if any.
    std::optional<double> zero_level() const noexcept { return zero_; }

    bool inside(double x) const noexcept { return a_ < x && x < b_; }

    std::string describe() const;

    friend ClosedFormMap reciprocal_map(const ClosedFormMap& map);

private:
    ClosedFormMap() = default;

    // evaluators of the underlying (non-reciprocal) closed form
    double base_f(double x) const;
    double base_g(double x) const;
    double base_gf(double x) const;
    double base_invert(double y) const;
    void check_domain(double x) const;

    MapCase kind_ = MapCase::Constant;
    bool reciprocal_ = false;
    Classification cls_;
    PolynomialSpec poly_;     // polynomial solved by this map
    PolynomialSpec base_;     // effective coefficients of the underlying closed form
    double base_f0_ = 1.0;
    double C_ = 0.0;
    double mu0_ = 0.0;
    double s_ = 0.0;          // sqrt(|C|)
    double c_ = 0.0;
    double r_ = 0.0;          // double root / shift
    double pole_ = 0.0;       // Coth: zero of the sinh argument
    double base_a_ = 0.0, base_b_ = 0.0;
    double a_ = 0.0, b_ = 0.0;
    double fa_ = 0.0, fb_ = 0.0;
    double base_fa_ = 0.0, base_fb_ = 0.0;
    std::optional<double> zero_;
};

/// Map of 1/f: solves the dual Riccati equation with weight g f / f0.
ClosedFormMap reciprocal_map(const ClosedFormMap& map);

/// Largest finite-difference residuals |f' - P(f)| / (1 + |P(f)|) and
/// |g'' + C g| / (1 + |g|) over evenly spaced interior points (a window of a few
/// intrinsic lengths when the domain is unbounded). Difference steps shrink with
/// the distance to the nearest end.
struct ResidualReport {
    double f_residual = 0.0;
    double g_residual = 0.0;
    std::size_t points = 0;
};

ResidualReport ode_residuals(const ClosedFormMap& map, std::size_t n_points = 1000);

} // namespace qnv
