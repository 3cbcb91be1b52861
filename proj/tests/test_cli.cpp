#include "qnv/cli.hpp"
#include "qnv/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qnv;

namespace {

std::string write_config(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("qnv_test_" + name + ".cfg");
    std::ofstream(path) << text;
    return path.string();
}

struct CommandResult {
    int code;
    std::string out;
    std::string err;
};

CommandResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kSmall = R"(# inverse Bessel, small run
model.e1 = 1
model.e2 = 0
model.e3 = 0
model.y0 = 1
claim.payoff = identity
claim.T = 1
engine.n_paths = 4000
engine.n_steps = 128
engine.seed = 42
)";

} // namespace

TEST(Config, ParsesKeysAndComments) {
    std::istringstream in(kSmall);
    const RunConfig c = parse_config(in);
    EXPECT_EQ(c.model.e1, 1.0);
    EXPECT_EQ(c.model.y0, 1.0);
    EXPECT_EQ(c.engine.n_paths, 4000u);
    ASSERT_TRUE(c.engine.seed.has_value());
    EXPECT_EQ(*c.engine.seed, 42u);
    EXPECT_EQ(c.engine.estimator, "transform");
}

TEST(Config, RejectsUnknownKeysAndMissingSeed) {
    for (const std::string& text : {std::string(kSmall) + "engine.colour = red\n",
                                   std::string("model.e1 = 1\nmodel.y0 = 1\n"),
                                   std::string(kSmall) + "model.e2 = abc\n",
                                   std::string(kSmall) + "engine.estimator = quantum\n"}) {
        std::istringstream in(text);
        try {
            parse_config(in);
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        }
    }
}

TEST(Config, RoundTrips) {
    std::istringstream in(std::string(kSmall) +
                          "claim.payoff = table\nclaim.table = 0:0, 1.5:0.25, 3:1\nclaim.table_at_infinity = 1\n"
                          "claim.cap = inf\nengine.dt = 0.001\ndefect.horizons = 0.5, 1, 2\n");
    const RunConfig a = parse_config(in);
    const std::string text = emit_config(a);
    std::istringstream again(text);
    const RunConfig b = parse_config(again);
    EXPECT_EQ(emit_config(b), text);
    EXPECT_EQ(b.claim.table, a.claim.table);
    EXPECT_EQ(b.defect_horizons, a.defect_horizons);
    EXPECT_TRUE(std::isinf(b.claim.cap));
    EXPECT_EQ(b.engine.dt, 0.001);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"price", "--config", "/nonexistent/qnv.cfg"}).code, kExitParse);
    EXPECT_EQ(run({"frobnicate", "--config", write_config("ok", kSmall)}).code, kExitParse);
    EXPECT_EQ(run({"price"}).code, kExitParse);
    const std::string bad_model = write_config("bad", std::string(kSmall) + "model.y0 = -1\n");
    EXPECT_EQ(run({"price", "--config", bad_model}).code, kExitSpec);
    const std::string huge = write_config("huge", std::string(kSmall) + "engine.step_budget = 1000\n");
    EXPECT_EQ(run({"price", "--config", huge}).code, kExitResource);
    EXPECT_EQ(exit_code(ErrorKind::ParseError), kExitParse);
    EXPECT_EQ(exit_code(ErrorKind::ResourceError), kExitResource);
    EXPECT_EQ(exit_code(ErrorKind::CaseError), kExitSpec);
}

TEST(Cli, ClassifySummary) {
    const CommandResult r = run({"classify", "--config", write_config("classify", kSmall)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("DoubleRoot r=0; strict local (Y and X)"), std::string::npos) << r.out;
}

TEST(Cli, PriceJsonIsIndependentOfThreads) {
    const std::string cfg = write_config("threads", kSmall);
    const CommandResult one = run({"price", "--config", cfg, "--threads", "1"});
    const CommandResult four = run({"price", "--config", cfg, "--threads", "4"});
    EXPECT_EQ(one.code, kExitOk) << one.err;
    EXPECT_EQ(one.out, four.out);
    for (const char* field : {"\"estimate\"", "\"stderr\"", "\"ci95\"", "\"n_paths\"", "\"seed\"",
                              "\"estimator\"", "\"spec\"", "\"claim\"", "\"runtime_ms\": null"})
        EXPECT_NE(one.out.find(field), std::string::npos) << field;
}

TEST(Cli, CsvOutput) {
    const CommandResult r = run({"price", "--config", write_config("csv", kSmall), "--format", "csv"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_NE(header.find("estimate"), std::string::npos);
    EXPECT_NE(row.find("transform"), std::string::npos);
}

TEST(Cli, DefectReportsClosedForm) {
    const std::string cfg =
        write_config("defect", "model.e1 = 1\nmodel.e2 = -3\nmodel.e3 = 2\nmodel.y0 = 3\nengine.seed = 1\n"
                               "engine.n_paths = 4000\nengine.n_steps = 128\ndefect.horizons = 1\n");
    const CommandResult r = run({"defect", "--config", cfg});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("0.65623358828475"), std::string::npos) << r.out;
}
