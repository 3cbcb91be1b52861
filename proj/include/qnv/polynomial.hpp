#pragma once

#include <string>
#include <vector>

namespace qnv {

/// Coefficients of P(z) = e1 z^2 + e2 z + e3 and the initial value y0 > 0.
struct PolynomialSpec {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double y0 = 1.0;

    friend bool operator==(const PolynomialSpec&, const PolynomialSpec&) = default;
};

enum class RootCase { Linear, DoubleRoot, TwoRealRoots, ComplexRoots };
enum class LinearKind { Constant, ArithmeticBm, ShiftedGbm };
enum class RootPosition { Inside, Outside, AtRoot };

struct DerivedConstants {
    double C = 0.0;     ///< e1 e3 - e2^2/4 (zeroed under the tolerance policy)
    double mu0 = 0.0;   ///< e1 y0 + e2/2
    double sqrt_abs_C = 0.0;
    /// Shift constant of the hyperbolic/trigonometric branches; NaN where undefined.
    double c = 0.0;
    bool has_c = false;
};

struct RootProfile {
    RootCase kind = RootCase::Linear;
    LinearKind linear = LinearKind::Constant;   ///< meaningful for Linear only
    double r1 = 0.0;                            ///< r1 < r2; r1 == r2 == r for DoubleRoot
    double r2 = 0.0;
    RootPosition position = RootPosition::Outside;
    bool at_root = false;                       ///< P(y0) == 0: the process is constant
};

struct Classification {
    PolynomialSpec spec;        ///< as given
    PolynomialSpec effective;   ///< e1 (and e2 when C vanishes with e1) snapped to 0
    DerivedConstants constants;
    RootProfile roots;
};

/// |value| <= 1e-12 max(1, |e2|, |e3|) counts as zero.
double zero_tolerance(const PolynomialSpec& spec) noexcept;

void validate(const PolynomialSpec& spec);

Classification classify(const PolynomialSpec& spec);

/// Coefficients (-e3, -e2, -e1) of -z^2 P(1/z), started at 1/y0.
PolynomialSpec dual_polynomial(const PolynomialSpec& spec);

double eval_P(const PolynomialSpec& spec, double z) noexcept;

std::vector<double> roots_of(const Classification& cls);

double discriminant_constant(const PolynomialSpec& spec) noexcept;

std::string describe(const RootProfile& profile);

} // namespace qnv
