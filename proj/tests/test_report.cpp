#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace sectional;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args)
{
    const std::string cmd = std::string(SECTIONAL_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch_dir()
{
    const auto dir = std::filesystem::temp_directory_path() / ("sectional_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text)
{
    const auto path = scratch_dir() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string write_operator(const std::string& name, const CurvatureOperator& r)
{
    return write_file(name, operator_to_json(r).dump(2));
}

json strip_timings(json j)
{
    j.erase("timings");
    return j;
}

} // namespace

TEST(OperatorFileTest, RoundTrip)
{
    RatMatrix m = random_symmetric(4, 5).matrix();
    m(1, 3) = m(3, 1) = Rational(-7, 9);
    const CurvatureOperator r(m);
    const json j = operator_to_json(r);
    EXPECT_EQ(j["matrix"][1][3], "-7/9");
    EXPECT_EQ(j["matrix"][0][0].get<std::string>().find('/') != std::string::npos, true);
    EXPECT_EQ(operator_from_json(j), r);
    EXPECT_EQ(operator_hash(r), operator_hash(operator_from_json(j)));
}

TEST(OperatorFileTest, AcceptsPlainIntegers)
{
    json j = operator_to_json(diagonal({1, 2, 3, 4, 5, 6}));
    j["matrix"][0][0] = "1";
    j["matrix"][1][1] = 2;
    EXPECT_EQ(operator_from_json(j), diagonal({1, 2, 3, 4, 5, 6}));
}

TEST(OperatorFileTest, RejectsMalformedInput)
{
    json j = operator_to_json(diagonal({1, 2, 3, 4, 5, 6}));
    json bad_dim = j;
    bad_dim["dim"] = 5;
    EXPECT_THROW(operator_from_json(bad_dim), InputError);
    json bad_basis = j;
    bad_basis["basis"] = "e12,e34,e13,e24,e14,e23";
    EXPECT_THROW(operator_from_json(bad_basis), InputError);
    json bad_entry = j;
    bad_entry["matrix"][2][2] = "1/0";
    EXPECT_THROW(operator_from_json(bad_entry), InputError);
    json bad_float = j;
    bad_float["matrix"][2][2] = 0.5;
    EXPECT_THROW(operator_from_json(bad_float), InputError);
    json short_row = j;
    short_row["matrix"][3].erase(0);
    EXPECT_THROW(operator_from_json(short_row), InputError);
    EXPECT_THROW(parse_operator_text("{not json"), InputError);
}

TEST(ReportFileTest, LosslessRoundTrip)
{
    AnalyzeOptions opts;
    opts.run_oracle = true;
    opts.run_witness = true;
    opts.oracle.restarts = 30;
    opts.perturb = Rational(1, 100);
    for (const auto& r : {random_symmetric(2, 5), diagonal({1, 2, 3, 4, 5, 6}), product_spheres()}) {
        AnalysisReport rep = analyze(r, opts);
        ReportFile file;
        file.command = "analyze";
        file.seed = 42;
        file.input_hash = operator_hash(r);
        file.oracle = rep.oracle;
        file.witness = rep.witness;
        rep.oracle.reset();
        rep.witness.reset();
        file.analysis = rep;
        file.timings["analyze_ms"] = 12.5;
        const json j = to_json(file);
        const json again = to_json(report_from_json(json::parse(j.dump())));
        EXPECT_EQ(j.dump(), again.dump());
    }
}

TEST(ReportFileTest, ExactFieldsAreStrings)
{
    const json j = to_json(analyze(diagonal({1, 2, 3, 4, 5, 6})));
    EXPECT_TRUE(j["disc_q"].is_string());
    for (const auto& c : j["q"]) EXPECT_TRUE(c.is_string());
    EXPECT_TRUE(j["bounds"]["lower"]["lower"].is_string());
    EXPECT_EQ(j["bounds"]["lower"]["lower"], "1/1");
    EXPECT_TRUE(j["numeric"]["bounds"][0].is_number_float());
}

TEST(ReportFileTest, RejectsUnknownSchema)
{
    EXPECT_THROW(report_from_json(json{{"schema", "other"}}), InputError);
}

TEST(CliTest, AnalyzeExitCodes)
{
    const CliRun golden = run_cli("analyze " + write_operator("golden.json", diagonal({1, 2, 3, 4, 5, 6})));
    EXPECT_EQ(golden.code, 0);
    const json g = json::parse(golden.out);
    EXPECT_EQ(g["analysis"]["verdict"], "POSITIVE");
    EXPECT_EQ(g["analysis"]["bounds"]["lower"]["lower"], "1/1");
    EXPECT_EQ(g["analysis"]["bounds"]["upper"]["upper"], "6/1");

    EXPECT_EQ(run_cli("analyze " + write_operator("neg.json", diagonal({-1, 2, 3, 4, 5, 6}))).code, 1);

    const CliRun id = run_cli("analyze --restarts 40 " + write_operator("id.json", constant_curvature(Rational(1))));
    EXPECT_EQ(id.code, 2);
    const json i = json::parse(id.out);
    EXPECT_EQ(i["analysis"]["verdict"], "DEGENERATE_FALLBACK");
    EXPECT_NEAR(i["oracle"]["numeric"]["min_value"].get<double>(), 1.0, 1e-6);
    EXPECT_NEAR(i["oracle"]["numeric"]["max_value"].get<double>(), 1.0, 1e-6);
}

TEST(CliTest, InputErrors)
{
    RatMatrix m = RatMatrix::identity(6);
    m(0, 1) = 1;
    EXPECT_EQ(run_cli("analyze " + write_operator("asym.json", CurvatureOperator(m))).code, 3);
    EXPECT_EQ(run_cli("analyze " + write_file("broken.json", "{\"dim\": 4,")).code, 3);
    json j = operator_to_json(diagonal({1, 2, 3, 4, 5, 6}));
    j["dim"] = 3;
    EXPECT_EQ(run_cli("analyze " + write_file("dim.json", j.dump())).code, 3);
    EXPECT_EQ(run_cli("analyze /nonexistent/operator.json").code, 3);
    EXPECT_EQ(run_cli("analyze").code, 3);
    EXPECT_EQ(run_cli("frobnicate").code, 3);
    EXPECT_EQ(run_cli("gen hyperbolic").code, 3);
    EXPECT_EQ(run_cli("gen diagonal 1 2 3").code, 3);
}

TEST(CliTest, GenFixtures)
{
    const CliRun a = run_cli("gen random --seed 7 --bound 5");
    const CliRun b = run_cli("gen random --seed 7 --bound 5");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(operator_from_json(json::parse(a.out)), random_symmetric(7, 5));

    const CliRun c = run_cli("gen constant 1");
    EXPECT_EQ(operator_from_json(json::parse(c.out)), constant_curvature(Rational(1)));
    const CliRun d = run_cli("gen diagonal 1 2 3 4 5 6");
    EXPECT_EQ(operator_from_json(json::parse(d.out)), diagonal({1, 2, 3, 4, 5, 6}));
    const CliRun p = run_cli("gen product-spheres");
    EXPECT_EQ(operator_from_json(json::parse(p.out)), product_spheres());
}

TEST(CliTest, OracleAndWitnessCommands)
{
    const std::string ps = write_operator("ps.json", product_spheres());
    const CliRun o = run_cli("oracle --restarts 60 --seed 3 " + ps);
    EXPECT_EQ(o.code, 0);
    const json oj = json::parse(o.out);
    EXPECT_TRUE(oj["analysis"].is_null());
    EXPECT_NEAR(oj["oracle"]["numeric"]["min_value"].get<double>(), 0.0, 1e-6);
    EXPECT_NEAR(oj["oracle"]["numeric"]["max_value"].get<double>(), 1.0, 1e-6);

    const json w = json::parse(run_cli("witness " + ps).out);
    EXPECT_NEAR(w["witness"]["numeric"]["y1"].get<double>(), 0.0, 1e-9);
    EXPECT_NEAR(w["witness"]["numeric"]["alpha1"].get<double>(), 0.0, 1e-9);
    const json wi = json::parse(run_cli("witness " + write_operator("i.json", constant_curvature(Rational(1)))).out);
    EXPECT_NEAR(wi["witness"]["numeric"]["alpha1"].get<double>(), 1.0, 1e-9);
}

TEST(CliTest, ReportsAreReproducible)
{
    const std::string f = write_operator("r3.json", random_symmetric(3, 5));
    const CliRun a = run_cli("analyze --oracle --witness --restarts 30 --seed 5 " + f);
    const CliRun b = run_cli("analyze --oracle --witness --restarts 30 --seed 5 " + f);
    EXPECT_EQ(strip_timings(json::parse(a.out)).dump(), strip_timings(json::parse(b.out)).dump());
    EXPECT_EQ(json::parse(a.out)["seed"], 5);
}

TEST(CliTest, SeedFromEnvironment)
{
    const std::string f = write_operator("env.json", random_symmetric(3, 5));
    const std::string cmd = std::string("SECTIONAL_SEED=17 ") + SECTIONAL_CLI_PATH + " oracle --restarts 5 " + f;
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    EXPECT_EQ(json::parse(out)["seed"], 17);
}

TEST(CliTest, PerturbFlag)
{
    const CliRun r = run_cli("analyze --restarts 20 --perturb 1/1000 " + write_operator("pid.json", constant_curvature(Rational(1))));
    EXPECT_EQ(r.code, 2);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["analysis"]["perturbation"]["heuristic"], true);
    EXPECT_EQ(j["analysis"]["perturbation"]["epsilon"], "1/1000");
}
