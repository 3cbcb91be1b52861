#include "qnv/claims.hpp"

#include "qnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace qnv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TerminalPayoff TerminalPayoff::unit() {
    TerminalPayoff p;
    p.kind_ = Kind::Unit;
    return p;
}

TerminalPayoff TerminalPayoff::identity() {
    TerminalPayoff p;
    p.kind_ = Kind::Identity;
    return p;
}

TerminalPayoff TerminalPayoff::call(double strike, double cap) {
    QNV_REQUIRE(std::isfinite(strike) && cap > 0.0, InvalidSpec, "bad call parameters");
    TerminalPayoff p;
    p.kind_ = Kind::Call;
    p.strike_ = strike;
    p.cap_ = cap;
    return p;
}

TerminalPayoff TerminalPayoff::put(double strike) {
    QNV_REQUIRE(std::isfinite(strike), InvalidSpec, "bad put strike");
    TerminalPayoff p;
    p.kind_ = Kind::Put;
    p.strike_ = strike;
    return p;
}

TerminalPayoff TerminalPayoff::digital(double strike) {
    QNV_REQUIRE(std::isfinite(strike), InvalidSpec, "bad digital strike");
    TerminalPayoff p;
    p.kind_ = Kind::Digital;
    p.strike_ = strike;
    return p;
}

TerminalPayoff TerminalPayoff::table(std::vector<std::pair<double, double>> nodes, double at_infinity) {
    QNV_REQUIRE(!nodes.empty(), InvalidSpec, "payoff table needs at least one node");
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        QNV_REQUIRE(std::isfinite(nodes[i].first) && std::isfinite(nodes[i].second) && nodes[i].second >= 0.0,
                    InvalidSpec, "payoff table nodes must be finite with nonnegative values");
        QNV_REQUIRE(i == 0 || nodes[i].first > nodes[i - 1].first, InvalidSpec,
                    "payoff table abscissae must be distinct");
    }
    QNV_REQUIRE(at_infinity >= 0.0, InvalidSpec, "value at infinity must be nonnegative");
    TerminalPayoff p;
    p.kind_ = Kind::Table;
    p.nodes_ = std::move(nodes);
    p.at_inf_ = at_infinity;
    return p;
}

double TerminalPayoff::operator()(double x) const {
    switch (kind_) {
    case Kind::Unit: return 1.0;
    case Kind::Identity: return x;
    case Kind::Call: return std::min(std::max(x - strike_, 0.0), cap_);
    case Kind::Put: return std::max(strike_ - x, 0.0);
    case Kind::Digital: return x > strike_ ? 1.0 : 0.0;
    case Kind::Table: {
        if (x == kInf)
            return at_inf_;
        if (x <= nodes_.front().first)
            return nodes_.front().second;
        if (x >= nodes_.back().first)
            return nodes_.back().second;
        auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                                   [](double v, const auto& node) { return v < node.first; });
        auto lo = hi - 1;
        const double w = (x - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    }
    }
    return 0.0;
}

double TerminalPayoff::euro_at_infinity() const {
    switch (kind_) {
    case Kind::Identity: return 1.0;
    case Kind::Call: return std::isinf(cap_) ? 1.0 : 0.0;
    case Kind::Table: return at_inf_;
    default: return 0.0;
    }
}

double TerminalPayoff::euro(double x) const {
    if (x == kInf)
        return euro_at_infinity();
    if (x <= 0.0)
        return 0.0;
    return (*this)(x) / x;
}

std::string TerminalPayoff::label() const {
    switch (kind_) {
    case Kind::Unit: return "unit";
    case Kind::Identity: return "X_T";
    case Kind::Call:
        return std::isinf(cap_) ? fmt::format("call K={:.17g}", strike_)
                                : fmt::format("call K={:.17g} cap={:.17g}", strike_, cap_);
    case Kind::Put: return fmt::format("put K={:.17g}", strike_);
    case Kind::Digital: return fmt::format("digital K={:.17g}", strike_);
    case Kind::Table: return fmt::format("table({} nodes)", nodes_.size());
    }
    return "";
}

ClaimSpec terminal_claim(const TerminalPayoff& h, double T, bool with_euro) {
    ClaimSpec c;
    c.T = T;
    c.dollar = [h](const PathView& p) { return h(p.terminal()); };
    if (with_euro)
        c.euro = [h](const PathView& p) { return h.euro(p.terminal()); };
    c.label = fmt::format("{} T={:.17g}{}", h.label(), T, with_euro ? " joint" : "");
    return c;
}

ClaimSpec down_and_in_claim(const TerminalPayoff& h, double barrier, double T) {
    ClaimSpec c;
    c.T = T;
    c.dollar = [h, barrier](const PathView& p) { return p.path_min <= barrier ? h(p.terminal()) : 0.0; };
    c.label = fmt::format("down-and-in L={:.17g} {} T={:.17g}", barrier, h.label(), T);
    return c;
}

ClaimSpec survival_claim(double level, double T) {
    ClaimSpec c;
    c.T = T;
    c.dollar = [level](const PathView& p) { return p.path_min > level ? 1.0 : 0.0; };
    c.label = fmt::format("survival above {:.17g}", level);
    return c;
}

} // namespace qnv
