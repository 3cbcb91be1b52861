#include "qnv/cli.hpp"

#include "qnv/brownian_engine.hpp"
#include "qnv/closed_forms.hpp"
#include "qnv/config.hpp"
#include "qnv/gbm_duality.hpp"
#include "qnv/martingality.hpp"
#include "qnv/measures.hpp"
#include "qnv/sde_oracle.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <boost/program_options.hpp>
#include <fmt/format.h>

namespace qnv {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ParseError: return kExitParse;
    case ErrorKind::ResourceError: return kExitResource;
    default: return kExitSpec;
    }
}

namespace {

namespace po = boost::program_options;

struct Options {
    std::string command;
    std::string config_path;
    unsigned threads = 1;
    std::optional<std::string> format;
    bool timing = false;
};

// ---- output helpers: JSON by hand so numbers keep 17 significant digits

std::string num(double x) {
    if (std::isnan(x))
        return "null";
    if (std::isinf(x))
        return x > 0 ? "\"inf\"" : "\"-inf\"";
    return fmt::format("{:.17g}", x);
}

std::string str(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20)
                out += fmt::format("\\u{:04x}", ch);
            else
                out += ch;
        }
    }
    return out + "\"";
}

std::string boolean(bool b) { return b ? "true" : "false"; }

using Fields = std::vector<std::pair<std::string, std::string>>;

std::string object(const Fields& fields) {
    std::string out = "{";
    for (std::size_t i = 0; i < fields.size(); ++i)
        out += fmt::format("{}{}: {}", i ? ", " : "", str(fields[i].first), fields[i].second);
    return out + "}";
}

std::string array(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i];
    return out + "]";
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string csv_num(double x) { return std::isfinite(x) ? fmt::format("{:.17g}", x) : (std::isnan(x) ? "" : (x > 0 ? "inf" : "-inf")); }

std::string spec_json(const PolynomialSpec& s) {
    return object({{"e1", num(s.e1)}, {"e2", num(s.e2)}, {"e3", num(s.e3)}, {"y0", num(s.y0)}});
}

std::string spec_text(const PolynomialSpec& s) {
    return fmt::format("e1={:.17g} e2={:.17g} e3={:.17g} y0={:.17g}", s.e1, s.e2, s.e3, s.y0);
}

// ---- pricing

struct Priced {
    PriceEstimate estimate;
    std::optional<double> runtime_ms;
    std::optional<std::pair<PriceEstimate, PriceEstimate>> joint_terms;
};

std::string priced_json(const Priced& p, const RunConfig& cfg, const ClaimSpec& claim) {
    const PriceEstimate& e = p.estimate;
    Fields f = {{"estimate", num(e.mean)},
                {"stderr", num(e.std_error)},
                {"ci95", array({num(e.ci95_lo), num(e.ci95_hi)})},
                {"n_paths", std::to_string(e.n_paths)},
                {"seed", std::to_string(e.seed)},
                {"estimator", str(e.estimator)},
                {"spec", spec_json(cfg.model)},
                {"claim", str(claim.label)},
                {"runtime_ms", p.runtime_ms ? num(*p.runtime_ms) : "null"}};
    if (p.joint_terms)
        f.emplace_back("terms", object({{"primal", num(p.joint_terms->first.mean)},
                                        {"hyperinflation", num(p.joint_terms->second.mean)}}));
    return object(f);
}

std::string priced_csv_header() { return "estimate,stderr,ci95_lo,ci95_hi,n_paths,seed,estimator,spec,claim,runtime_ms"; }

std::string priced_csv(const Priced& p, const RunConfig& cfg, const ClaimSpec& claim) {
    const PriceEstimate& e = p.estimate;
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", csv_num(e.mean), csv_num(e.std_error), csv_num(e.ci95_lo),
                       csv_num(e.ci95_hi), e.n_paths, e.seed, e.estimator, csv_cell(spec_text(cfg.model)),
                       csv_cell(claim.label), p.runtime_ms ? csv_num(*p.runtime_ms) : "");
}

template <class F>
Priced timed(bool timing, F&& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Priced p;
    run(p);
    if (timing)
        p.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return p;
}

bool stopped(const RunConfig& cfg) { return cfg.engine.process == "stopped"; }

// gbm-dual simulates Y itself; it prices X only when Y cannot reach zero
void require_gbm_applicable(const RunConfig& cfg) {
    make_gbm_dual(cfg.model);
    if (stopped(cfg))
        QNV_REQUIRE(!ClosedFormMap::build(cfg.model).zero_level(), CaseError,
                    "gbm-dual prices the unstopped process and Y can reach zero here; use engine.process=unstopped");
}

bool gbm_applicable(const RunConfig& cfg) {
    try {
        require_gbm_applicable(cfg);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Priced run_estimator(const std::string& name, const RunConfig& cfg, const ClaimSpec& claim, const Options& opt) {
    const McParams mc = mc_params(cfg, opt.threads);
    if (name == "transform") {
        if (cfg.claim.legs == "joint") {
            QNV_REQUIRE(stopped(cfg), InvalidSpec, "joint pricing applies to the stopped process");
            return timed(opt.timing, [&](Priced& p) {
                const JointPriceResult r = joint_price(cfg.model, claim, mc);
                p.estimate = r.total;
                p.joint_terms = std::pair{r.term1, r.term2};
            });
        }
        return timed(opt.timing, [&](Priced& p) {
            p.estimate = stopped(cfg) ? price_stopped(cfg.model, claim, mc) : price_unstopped(cfg.model, claim, mc);
        });
    }
    QNV_REQUIRE(cfg.claim.legs == "dollar", InvalidSpec, "joint claims are priced by the transform estimator only");
    if (name == "euler") {
        EulerParams ep;
        ep.dt = cfg.engine.dt;
        ep.n_paths = cfg.engine.n_paths;
        ep.seed = mc.seed;
        ep.absorb_at_zero = stopped(cfg);
        ep.threads = opt.threads;
        ep.step_budget = cfg.engine.step_budget;
        return timed(opt.timing, [&](Priced& p) { p.estimate = euler_price(cfg.model, claim, ep); });
    }
    require_gbm_applicable(cfg);
    return timed(opt.timing, [&](Priced& p) { p.estimate = gbm_price(cfg.model, claim, mc); });
}

int cmd_price(const RunConfig& cfg, const Options& opt, const std::string& format, std::ostream& out) {
    const ClaimSpec claim = build_claim(cfg.claim);
    std::vector<std::string> names;
    std::vector<std::string> skipped;
    if (cfg.engine.estimator == "all") {
        names = {"transform", "euler"};
        if (gbm_applicable(cfg))
            names.push_back("gbm-dual");
        else
            skipped.push_back("gbm-dual");
    } else {
        names = {cfg.engine.estimator};
    }
    std::vector<Priced> results;
    for (const auto& n : names)
        results.push_back(run_estimator(n, cfg, claim, opt));

    if (format == "csv") {
        out << priced_csv_header() << '\n';
        for (const auto& r : results)
            out << priced_csv(r, cfg, claim) << '\n';
        return kExitOk;
    }
    if (cfg.engine.estimator != "all") {
        out << priced_json(results.front(), cfg, claim) << '\n';
        return kExitOk;
    }
    std::vector<std::string> items, zs, skip;
    for (const auto& r : results)
        items.push_back(priced_json(r, cfg, claim));
    for (std::size_t i = 0; i < results.size(); ++i)
        for (std::size_t j = i + 1; j < results.size(); ++j)
            zs.push_back(object({{"a", str(results[i].estimate.estimator)},
                                 {"b", str(results[j].estimate.estimator)},
                                 {"z", num(z_score(results[i].estimate, results[j].estimate))}}));
    for (const auto& s : skipped)
        skip.push_back(str(s));
    out << object({{"results", array(items)}, {"z_scores", array(zs)}, {"skipped", array(skip)}}) << '\n';
    return kExitOk;
}

// ---- classify

std::string martingality_phrase(const MartingalityReport& m) {
    if (m.y_is_true_martingale && m.x_is_true_martingale)
        return "true martingale (Y and X)";
    if (!m.y_is_true_martingale && !m.x_is_true_martingale)
        return "strict local (Y and X)";
    return m.x_is_true_martingale ? "strict local (Y); true martingale (X)" : "true martingale (Y); strict local (X)";
}

int cmd_classify(const RunConfig& cfg, const std::string& format, std::ostream& out) {
    const Classification cls = classify(cfg.model);
    const ClosedFormMap map = ClosedFormMap::build(cfg.model);
    const MartingalityReport m = classify_martingality(cfg.model);
    const std::string summary = fmt::format("{}; {}", describe(cls.roots), martingality_phrase(m));
    const std::optional<double> zero = map.zero_level();
    if (format == "json") {
        out << object({{"summary", str(summary)},
                       {"roots", str(describe(cls.roots))},
                       {"C", num(cls.constants.C)},
                       {"mu0", num(cls.constants.mu0)},
                       {"branch", str(to_string(map.kind()))},
                       {"a", num(map.a())},
                       {"b", num(map.b())},
                       {"zero_level", zero ? num(*zero) : "null"},
                       {"y_true_martingale", boolean(m.y_is_true_martingale)},
                       {"x_true_martingale", boolean(m.x_is_true_martingale)},
                       {"reason", str(m.reason)},
                       {"spec", spec_json(cfg.model)}})
            << '\n';
    } else if (format == "csv") {
        out << "summary,roots,C,mu0,branch,a,b,zero_level,y_true_martingale,x_true_martingale,reason\n";
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv_cell(summary), csv_cell(describe(cls.roots)),
                           csv_num(cls.constants.C), csv_num(cls.constants.mu0), to_string(map.kind()),
                           csv_num(map.a()), csv_num(map.b()), zero ? csv_num(*zero) : "",
                           boolean(m.y_is_true_martingale), boolean(m.x_is_true_martingale), csv_cell(m.reason));
    } else {
        out << summary << '\n';
        out << fmt::format("C={:.17g} mu0={:.17g}\n", cls.constants.C, cls.constants.mu0);
        out << fmt::format("branch {}\n", map.describe());
        if (zero)
            out << fmt::format("f vanishes at W={:.17g}\n", *zero);
        out << fmt::format("reason: {}\n", m.reason);
    }
    return kExitOk;
}

// ---- defect

std::optional<double> closed_form_defect(const RunConfig& cfg, double T) {
    const Classification cls = classify(cfg.model);
    if (stopped(cfg) && ClosedFormMap::build(cfg.model).zero_level())
        return std::nullopt;  // the known closed forms describe Y
    const MartingalityReport m = classify_martingality(cfg.model);
    if (stopped(cfg) ? m.x_is_true_martingale : m.y_is_true_martingale)
        return 0.0;
    if (cls.roots.kind == RootCase::TwoRealRoots)
        return martingale_defect(cfg.model, T);
    const PolynomialSpec& e = cls.effective;
    if (e.e2 == 0.0 && e.e3 == 0.0 && e.e1 != 0.0) {
        // Y / |e1| scaling of the reciprocal Bessel process
        const double k = std::abs(e.e1);
        return defect_inverse_bessel(k * cfg.model.y0, T) / k;
    }
    return std::nullopt;
}

int cmd_defect(const RunConfig& cfg, const Options& opt, const std::string& format, std::ostream& out) {
    std::vector<double> horizons = cfg.defect_horizons;
    if (horizons.empty())
        horizons.push_back(cfg.claim.T);
    const McParams mc = mc_params(cfg, opt.threads);
    const MartingalityReport m = classify_martingality(cfg.model);
    std::vector<std::string> rows;
    if (format == "csv")
        out << "T,closed_form,estimate,stderr,ci95_lo,ci95_hi,n_paths,seed,estimator\n";
    for (double T : horizons) {
        const ClaimSpec claim = terminal_claim(TerminalPayoff::identity(), T);
        const PriceEstimate mean =
            stopped(cfg) ? price_stopped(cfg.model, claim, mc) : price_unstopped(cfg.model, claim, mc);
        const double d = cfg.model.y0 - mean.mean;
        const std::optional<double> cf = closed_form_defect(cfg, T);
        const double lo = cfg.model.y0 - mean.ci95_hi;
        const double hi = cfg.model.y0 - mean.ci95_lo;
        if (format == "csv") {
            out << fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_num(T), cf ? csv_num(*cf) : "", csv_num(d),
                               csv_num(mean.std_error), csv_num(lo), csv_num(hi), mean.n_paths, mean.seed,
                               mean.estimator);
        } else {
            rows.push_back(object({{"T", num(T)},
                                   {"closed_form", cf ? num(*cf) : "null"},
                                   {"estimate", num(d)},
                                   {"stderr", num(mean.std_error)},
                                   {"ci95", array({num(lo), num(hi)})},
                                   {"n_paths", std::to_string(mean.n_paths)},
                                   {"seed", std::to_string(mean.seed)},
                                   {"estimator", str(mean.estimator)}}));
        }
    }
    if (format != "csv")
        out << object({{"spec", spec_json(cfg.model)},
                       {"process", str(cfg.engine.process)},
                       {"strict_local", boolean(stopped(cfg) ? !m.x_is_true_martingale : !m.y_is_true_martingale)},
                       {"rows", array(rows)}})
            << '\n';
    return kExitOk;
}

// ---- verify

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

SuiteResult guarded(const std::string& name, const std::function<SuiteResult()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return {name, false, e.what()};
    }
}

std::vector<PolynomialSpec> branch_representatives(const PolynomialSpec& model) {
    return {model,
            {0.0, 0.0, 1.0, 1.0},   // arithmetic Brownian motion
            {0.0, 1.0, 0.0, 1.0},   // geometric Brownian motion
            {1.0, 0.0, 0.0, 1.0},   // double root
            {1.0, -3.0, 2.0, 1.5},  // between the roots
            {1.0, -3.0, 2.0, 3.0},  // outside the roots
            {1.0, 0.0, 1.0, 1.0},   // complex roots
            {1.0, -3.0, 2.0, 2.0}}; // at a root
}

SuiteResult suite_residuals(const PolynomialSpec& model) {
    double worst = 0.0;
    for (const auto& s : branch_representatives(model)) {
        const ClosedFormMap map = ClosedFormMap::build(s);
        const ResidualReport r = ode_residuals(map, 1000);
        worst = std::max({worst, r.f_residual, r.g_residual});
    }
    return {"ode residuals", worst <= 1e-6, fmt::format("max scaled residual {:.3e} (tol 1e-6)", worst)};
}

SuiteResult suite_normalization(const PolynomialSpec& model, const McParams& base) {
    McParams mc = base;
    double worst = 0.0;
    for (const auto& s : branch_representatives(model)) {
        const ClaimSpec unit = terminal_claim(TerminalPayoff::unit(), 1.0);
        for (bool stop : {false, true}) {
            const PriceEstimate e = stop ? price_stopped(s, unit, mc) : price_unstopped(s, unit, mc);
            worst = std::max(worst, std::abs(e.mean - 1.0));
        }
    }
    const PriceEstimate raw = weight_normalization(model, 1.0, mc, true);
    const double z = std::abs(raw.mean - 1.0) / std::max(raw.std_error, 1e-300);
    const bool ok = worst <= 1e-12 && (raw.std_error == 0.0 ? raw.mean == 1.0 : z <= 3.0);
    return {"weight normalization", ok,
            fmt::format("max |price(1) - 1| = {:.3e}; raw weight mean {:.6f} ({:.2f} sigma)", worst, raw.mean,
                        raw.std_error == 0.0 ? 0.0 : z)};
}

SuiteResult suite_duality(const PolynomialSpec& model, std::uint64_t seed) {
    const PolynomialSpec s = model.y0 > 0.0 && eval_P(model, model.y0) != 0.0 ? model : PolynomialSpec{1.0, 0.0, 1.0, 1.0};
    const DualModel dm = make_dual_model(s);
    const double x0 = s.y0;
    double worst_g = 0.0, worst_map = 0.0;
    const double lo = std::max(dm.reciprocal.a(), -3.0);
    const double hi = std::min(dm.reciprocal.b(), 3.0);
    for (int k = 1; k < 1000; ++k) {
        const double x = lo + (hi - lo) * k / 1000.0;
        if (!dm.reciprocal.inside(x) || !dm.dual.inside(x))
            continue;
        const double lhs = dm.reciprocal.g(x) * x0;
        const double rhs = dm.primal.g(x) * dm.primal.f(x);
        worst_g = std::max(worst_g, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        const double fr = dm.reciprocal.f(x), fd = dm.dual.f(x);
        const double gr = dm.reciprocal.g(x), gd = dm.dual.g(x);
        worst_map = std::max({worst_map, std::abs(fr - fd) / std::max(std::abs(fd), 1e-300),
                              std::abs(gr - gd) / std::max(std::abs(gd), 1e-300)});
    }
    std::size_t mismatches = 0;
    PathGrid path;
    for (std::size_t i = 0; i < 1000; ++i) {
        auto rng = path_stream(seed, StreamSalt::BrownianEngine, i);
        simulate_into(path, rng, 1.0, 512);
        mismatches += swap_outcomes(dm, path).swapped() ? 0 : 1;
    }
    return {"duality", worst_g <= 1e-10 && worst_map <= 1e-10 && mismatches == 0,
            fmt::format("g-hat x0 vs g f {:.3e}; reciprocal vs dual map {:.3e}; swap mismatches {}/1000", worst_g,
                        worst_map, mismatches)};
}

SuiteResult suite_symmetry(const McParams& mc) {
    std::string detail;
    bool ok = true;
    for (const PolynomialSpec& s : {PolynomialSpec{1.0, 0.0, 1.0, 1.0}, PolynomialSpec{1.0, -1.0, 1.0, 1.0},
                                    PolynomialSpec{0.0, 1.0, 0.0, 1.0}}) {
        const ScalarPayoff alive = [](double u) { return u > 0.0 && std::isfinite(u) ? 1.0 : 0.0; };
        const SymmetryResult r = symmetry_check(s, alive, s.y0, 1.0, mc);
        ok = ok && r.z <= 3.0;
        detail += fmt::format("{}(e1={},e2={}) z={:.2f}", detail.empty() ? "" : "; ", s.e1, s.e2, r.z);
    }
    return {"symmetry", ok, detail};
}

SuiteResult suite_joint(const McParams& mc) {
    ClaimSpec fx;
    fx.T = 1.0;
    fx.label = "D=(X_T,1)";
    fx.dollar = [](const PathView& v) { return v.terminal(); };
    fx.euro = [](const PathView&) { return 1.0; };
    const PolynomialSpec strict{1.0, 0.0, 1.0, 1.0};
    const JointPriceResult r = joint_price(strict, fx, mc);
    const double z = std::abs(r.total.mean - strict.y0) / r.total.std_error;
    const PolynomialSpec tm{1.0, -3.0, 2.0, 1.5};
    const JointPriceResult t = joint_price(tm, fx, mc);
    const PriceEstimate direct = price_stopped(tm, fx, mc);
    const bool exact = t.hyperinflation_paths == 0 && t.term2.mean == 0.0 && t.total.mean == direct.mean;
    return {"joint price", z <= 3.0 && exact,
            fmt::format("strict local: {:.6f} vs x0=1 ({:.2f} sigma); true martingale: hyperinflation paths {}, "
                        "total - stopped price = {:.3e}",
                        r.total.mean, z, t.hyperinflation_paths, t.total.mean - direct.mean)};
}

int cmd_verify(const RunConfig& cfg, const Options& opt, const std::string& format, std::ostream& out) {
    const McParams mc = mc_params(cfg, opt.threads);
    std::vector<SuiteResult> results;
    results.push_back(guarded("ode residuals", [&] { return suite_residuals(cfg.model); }));
    results.push_back(guarded("weight normalization", [&] { return suite_normalization(cfg.model, mc); }));
    results.push_back(guarded("duality", [&] { return suite_duality(cfg.model, mc.seed); }));
    results.push_back(guarded("symmetry", [&] { return suite_symmetry(mc); }));
    results.push_back(guarded("joint price", [&] { return suite_joint(mc); }));
    bool all = true;
    std::vector<std::string> items;
    if (format == "csv")
        out << "suite,passed,detail\n";
    for (const auto& r : results) {
        all = all && r.passed;
        if (format == "csv")
            out << fmt::format("{},{},{}\n", csv_cell(r.name), boolean(r.passed), csv_cell(r.detail));
        else if (format == "json")
            items.push_back(object({{"suite", str(r.name)}, {"passed", boolean(r.passed)}, {"detail", str(r.detail)}}));
        else
            out << fmt::format("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    }
    if (format == "json")
        out << object({{"passed", boolean(all)}, {"suites", array(items)}}) << '\n';
    return all ? kExitOk : kExitVerify;
}

Options parse_options(const std::vector<std::string>& args) {
    if (args.empty())
        throw Error(ErrorKind::ParseError, "usage: qnv classify|price|verify|defect --config FILE [--threads N] "
                                           "[--format json|csv] [--timing]");
    Options opt;
    opt.command = args.front();
    if (opt.command != "classify" && opt.command != "price" && opt.command != "verify" && opt.command != "defect")
        throw Error(ErrorKind::ParseError, fmt::format("unknown command '{}'", opt.command));
    po::options_description desc("options");
    std::string format;
    desc.add_options()("config", po::value<std::string>(&opt.config_path)->required(), "run configuration")(
        "threads", po::value<unsigned>(&opt.threads)->default_value(1), "worker threads")(
        "format", po::value<std::string>(&format), "json | csv")("timing", po::bool_switch(&opt.timing),
                                                                  "report runtime_ms");
    try {
        po::variables_map vm;
        const std::vector<std::string> rest(args.begin() + 1, args.end());
        po::store(po::command_line_parser(rest).options(desc).run(), vm);
        po::notify(vm);
    } catch (const po::error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!format.empty()) {
        if (format != "json" && format != "csv")
            throw Error(ErrorKind::ParseError, fmt::format("--format: unknown value '{}'", format));
        opt.format = format;
    }
    QNV_REQUIRE(opt.threads >= 1, ParseError, "--threads must be at least 1");
    return opt;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const Options opt = parse_options(args);
        const RunConfig cfg = load_config(opt.config_path);
        validate(cfg.model);
        // classify and verify print a text report unless a format is requested
        std::string format = opt.format.value_or(cfg.output.format);
        if (format.empty())
            format = opt.command == "classify" || opt.command == "verify" ? "text" : "json";

        std::ostringstream buffer;
        int code = kExitOk;
        if (opt.command == "classify")
            code = cmd_classify(cfg, format, buffer);
        else if (opt.command == "price")
            code = cmd_price(cfg, opt, format, buffer);
        else if (opt.command == "defect")
            code = cmd_defect(cfg, opt, format, buffer);
        else
            code = cmd_verify(cfg, opt, format, buffer);

        if (cfg.output.path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(cfg.output.path);
            if (!file)
                throw Error(ErrorKind::ParseError, fmt::format("cannot write '{}'", cfg.output.path));
            file << buffer.str();
        }
        return code;
    } catch (const Error& e) {
        err << "qnv: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "qnv: " << e.what() << '\n';
        return kExitResource;
    }
}

} // namespace qnv
