#pragma once

#include "qnv/polynomial.hpp"

#include <random>
#include <string>

namespace qnv::testing {

enum class Branch { Arithmetic, Geometric, DoubleRootUp, DoubleRootDown, Inside, Outside, Complex, AtRoot };
inline constexpr int kBranches = 8;

inline std::string branch_name(Branch b) {
    const char* names[] = {"arithmetic", "geometric", "double-up", "double-down",
                           "inside", "outside", "complex", "at-root"};
    return names[static_cast<int>(b)];
}

/// Random spec of the requested closed-form branch with moderate coefficients.
inline PolynomialSpec random_spec(Branch b, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto mag = [&] { return 0.2 + 1.8 * u(rng); };
    auto sign = [&] { return u(rng) < 0.5 ? -1.0 : 1.0; };
    PolynomialSpec s;
    switch (b) {
    case Branch::Arithmetic:
        s = {0.0, 0.0, sign() * mag(), 0.2 + 2.8 * u(rng)};
        break;
    case Branch::Geometric:
        s = {0.0, sign() * mag(), -2.0 + 4.0 * u(rng), 0.2 + 2.8 * u(rng)};
        break;
    case Branch::DoubleRootUp:
    case Branch::DoubleRootDown: {
        const double e1 = sign() * mag();
        const double r = 0.2 + 1.8 * u(rng);
        // mu0 = e1 (y0 - r): choose the side of the root that gives the requested sign
        const bool above = (b == Branch::DoubleRootUp) == (e1 > 0);
        const double y0 = above ? r + 0.1 + 2.0 * u(rng) : r * (0.1 + 0.8 * u(rng));
        s = {e1, -2.0 * e1 * r, e1 * r * r, y0};
        break;
    }
    case Branch::Inside:
    case Branch::Outside:
    case Branch::AtRoot: {
        const double e1 = sign() * mag();
        const double r1 = -1.0 + 2.5 * u(rng);
        const double r2 = std::max(r1, 0.0) + 0.3 + 2.0 * u(rng);
        double y0;
        if (b == Branch::Inside)
            y0 = std::max(r1, 0.05) + (r2 - std::max(r1, 0.05)) * (0.1 + 0.8 * u(rng));
        else if (b == Branch::Outside)
            y0 = (r1 > 0.3 && u(rng) < 0.5) ? r1 * (0.1 + 0.8 * u(rng)) : r2 + 0.1 + 2.0 * u(rng);
        else
            y0 = r2;
        s = {e1, -e1 * (r1 + r2), e1 * r1 * r2, y0};
        break;
    }
    case Branch::Complex: {
        const double e1 = sign() * mag();
        const double e2 = -2.0 + 4.0 * u(rng);
        s = {e1, e2, (e2 * e2 / 4.0 + 0.1 + 2.0 * u(rng)) / e1, 0.2 + 2.8 * u(rng)};
        break;
    }
    }
    return s;
}

} // namespace qnv::testing
