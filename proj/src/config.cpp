#include "qnv/config.hpp"

#include "qnv/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace qnv {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "+inf")
        return std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw Error(ErrorKind::ParseError, fmt::format("{}: '{}' is not a number", key, v));
    return x;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw Error(ErrorKind::ParseError, fmt::format("{}: '{}' is not a nonnegative integer", key, v));
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw Error(ErrorKind::ParseError, fmt::format("{}: '{}' is not true/false", key, v));
}

std::string parse_choice(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (v == a)
            return v;
    throw Error(ErrorKind::ParseError, fmt::format("{}: unknown value '{}'", key, v));
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_real(key, trim(item)));
    return out;
}

// "x:v, x:v, ..."
std::vector<std::pair<double, double>> parse_table(const std::string& key, const std::string& v) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorKind::ParseError, fmt::format("{}: table entry '{}' needs x:value", key, trim(item)));
        out.emplace_back(parse_real(key, trim(item.substr(0, colon))), parse_real(key, trim(item.substr(colon + 1))));
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"model.e1", [](RunConfig& c, auto& k, auto& v) { c.model.e1 = parse_real(k, v); }},
        {"model.e2", [](RunConfig& c, auto& k, auto& v) { c.model.e2 = parse_real(k, v); }},
        {"model.e3", [](RunConfig& c, auto& k, auto& v) { c.model.e3 = parse_real(k, v); }},
        {"model.y0", [](RunConfig& c, auto& k, auto& v) { c.model.y0 = parse_real(k, v); }},
        {"claim.payoff",
         [](RunConfig& c, auto& k, auto& v) {
             c.claim.payoff = parse_choice(k, v, {"unit", "identity", "call", "put", "digital", "table", "barrier"});
         }},
        {"claim.strike", [](RunConfig& c, auto& k, auto& v) { c.claim.strike = parse_real(k, v); }},
        {"claim.cap", [](RunConfig& c, auto& k, auto& v) { c.claim.cap = parse_real(k, v); }},
        {"claim.barrier", [](RunConfig& c, auto& k, auto& v) { c.claim.barrier = parse_real(k, v); }},
        {"claim.inner",
         [](RunConfig& c, auto& k, auto& v) {
             c.claim.inner = parse_choice(k, v, {"unit", "identity", "call", "put", "digital", "table"});
         }},
        {"claim.table", [](RunConfig& c, auto& k, auto& v) { c.claim.table = parse_table(k, v); }},
        {"claim.table_at_infinity", [](RunConfig& c, auto& k, auto& v) { c.claim.table_at_infinity = parse_real(k, v); }},
        {"claim.legs", [](RunConfig& c, auto& k, auto& v) { c.claim.legs = parse_choice(k, v, {"dollar", "joint"}); }},
        {"claim.T", [](RunConfig& c, auto& k, auto& v) { c.claim.T = parse_real(k, v); }},
        {"engine.estimator",
         [](RunConfig& c, auto& k, auto& v) {
             c.engine.estimator = parse_choice(k, v, {"transform", "euler", "gbm-dual", "all"});
         }},
        {"engine.process",
         [](RunConfig& c, auto& k, auto& v) { c.engine.process = parse_choice(k, v, {"stopped", "unstopped"}); }},
        {"engine.n_paths", [](RunConfig& c, auto& k, auto& v) { c.engine.n_paths = parse_unsigned(k, v); }},
        {"engine.n_steps", [](RunConfig& c, auto& k, auto& v) { c.engine.n_steps = parse_unsigned(k, v); }},
        {"engine.dt", [](RunConfig& c, auto& k, auto& v) { c.engine.dt = parse_real(k, v); }},
        {"engine.seed", [](RunConfig& c, auto& k, auto& v) { c.engine.seed = parse_unsigned(k, v); }},
        {"engine.weight_control", [](RunConfig& c, auto& k, auto& v) { c.engine.weight_control = parse_bool(k, v); }},
        {"engine.step_budget", [](RunConfig& c, auto& k, auto& v) { c.engine.step_budget = parse_real(k, v); }},
        {"output.format", [](RunConfig& c, auto& k, auto& v) { c.output.format = parse_choice(k, v, {"json", "csv"}); }},
        {"output.path", [](RunConfig& c, auto&, auto& v) { c.output.path = v; }},
        {"defect.horizons", [](RunConfig& c, auto& k, auto& v) { c.defect_horizons = parse_list(k, v); }},
    };
    return table;
}

std::string real(double x) {
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

} // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(line.substr(0, hash));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError, fmt::format("line {}: expected key=value", lineno));
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw Error(ErrorKind::ParseError, fmt::format("line {}: unknown key '{}'", lineno, key));
        it->second(c, key, value);
    }
    if (!c.engine.seed)
        throw Error(ErrorKind::ParseError, "engine.seed is mandatory");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, fmt::format("cannot read config '{}'", path));
    return parse_config(in);
}

std::string emit_config(const RunConfig& c) {
    std::string out;
    auto put = [&out](std::string_view key, const std::string& value) { out += fmt::format("{}={}\n", key, value); };
    put("model.e1", real(c.model.e1));
    put("model.e2", real(c.model.e2));
    put("model.e3", real(c.model.e3));
    put("model.y0", real(c.model.y0));
    put("claim.payoff", c.claim.payoff);
    put("claim.strike", real(c.claim.strike));
    put("claim.cap", real(c.claim.cap));
    if (!std::isnan(c.claim.barrier))
        put("claim.barrier", real(c.claim.barrier));
    put("claim.inner", c.claim.inner);
    if (!c.claim.table.empty()) {
        std::string t;
        for (const auto& [x, v] : c.claim.table)
            t += fmt::format("{}{}:{}", t.empty() ? "" : ",", real(x), real(v));
        put("claim.table", t);
    }
    put("claim.table_at_infinity", real(c.claim.table_at_infinity));
    put("claim.legs", c.claim.legs);
    put("claim.T", real(c.claim.T));
    put("engine.estimator", c.engine.estimator);
    put("engine.process", c.engine.process);
    put("engine.n_paths", std::to_string(c.engine.n_paths));
    put("engine.n_steps", std::to_string(c.engine.n_steps));
    put("engine.dt", real(c.engine.dt));
    if (c.engine.seed)
        put("engine.seed", std::to_string(*c.engine.seed));
    put("engine.weight_control", c.engine.weight_control ? "true" : "false");
    put("engine.step_budget", real(c.engine.step_budget));
    if (!c.output.format.empty())
        put("output.format", c.output.format);
    if (!c.output.path.empty())
        put("output.path", c.output.path);
    if (!c.defect_horizons.empty()) {
        std::string h;
        for (double x : c.defect_horizons)
            h += fmt::format("{}{}", h.empty() ? "" : ",", real(x));
        put("defect.horizons", h);
    }
    return out;
}

TerminalPayoff terminal_payoff(const RunConfig::Claim& claim, const std::string& kind) {
    if (kind == "unit")
        return TerminalPayoff::unit();
    if (kind == "identity")
        return TerminalPayoff::identity();
    if (kind == "call")
        return TerminalPayoff::call(claim.strike, claim.cap);
    if (kind == "put")
        return TerminalPayoff::put(claim.strike);
    if (kind == "digital")
        return TerminalPayoff::digital(claim.strike);
    if (kind == "table")
        return TerminalPayoff::table(claim.table, claim.table_at_infinity);
    throw Error(ErrorKind::InvalidSpec, fmt::format("'{}' is not a terminal payoff", kind));
}

ClaimSpec build_claim(const RunConfig::Claim& claim) {
    QNV_REQUIRE(claim.T > 0.0 && std::isfinite(claim.T), InvalidSpec, "claim.T must be positive");
    if (claim.payoff == "barrier") {
        QNV_REQUIRE(std::isfinite(claim.barrier), InvalidSpec, "barrier claim needs claim.barrier");
        QNV_REQUIRE(claim.legs == "dollar", InvalidSpec, "barrier claims have a dollar leg only");
        return down_and_in_claim(terminal_payoff(claim, claim.inner), claim.barrier, claim.T);
    }
    return terminal_claim(terminal_payoff(claim, claim.payoff), claim.T, claim.legs == "joint");
}

McParams mc_params(const RunConfig& config, unsigned threads) {
    McParams mc;
    mc.n_paths = config.engine.n_paths;
    mc.n_steps = config.engine.n_steps;
    mc.seed = config.engine.seed.value_or(0);
    mc.threads = threads;
    mc.weight_control = config.engine.weight_control;
    mc.step_budget = config.engine.step_budget;
    return mc;
}

} // namespace qnv
