// sectional: decide sectional positivity of 4-dimensional curvature operators.
//
// Exit codes: 0 positive/nonnegative, 1 negative somewhere, 2 undecided,
// 3 input error.

#include "sectional/sectional.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sectional;

constexpr int kInputError = 3;

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("SECTIONAL_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError(std::string("SECTIONAL_SEED is not an unsigned integer: ") + env);
        }
    }
    return 42;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CurvatureOperator load_operator(const std::string& path)
{
    CurvatureOperator r = parse_operator_text(read_file(path));
    const ValidationReport v = validate_operator(r);
    if (!v.ok()) throw InputError(v.errors.front());
    for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
    return r;
}

void emit(const json& j, const std::string& out)
{
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write " + out);
    f << text;
}

class Stopwatch {
public:
    double lap_ms()
    {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct AnalyzeArgs {
    std::string input;
    std::string output;
    bool oracle = false;
    bool witness = false;
    std::uint64_t seed = 0;
    std::string tolerance;
    std::string perturb;
    int restarts = 200;
};

int run_analyze(const AnalyzeArgs& a)
{
    const CurvatureOperator r = load_operator(a.input);
    AnalyzeOptions opts;
    opts.run_oracle = a.oracle;
    opts.run_witness = a.witness;
    opts.seed = a.seed;
    opts.oracle.restarts = a.restarts;
    if (!a.tolerance.empty()) {
        opts.tolerance = parse_rational(a.tolerance);
        if (opts.tolerance <= 0) throw InputError("--tolerance must be positive");
    }
    if (!a.perturb.empty()) opts.perturb = parse_rational(a.perturb);

    Stopwatch sw;
    AnalysisReport rep = analyze(r, opts);
    ReportFile file;
    file.command = "analyze";
    file.seed = a.seed;
    file.input_hash = operator_hash(r);
    file.timings["analyze_ms"] = sw.lap_ms();
    file.oracle = std::move(rep.oracle);
    file.witness = std::move(rep.witness);
    rep.oracle.reset();
    rep.witness.reset();
    const Verdict verdict = rep.verdict;
    for (const auto& v : rep.contract_violations) std::cerr << "contract violation: " << v << "\n";
    file.analysis = std::move(rep);
    emit(to_json(file), a.output);
    return exit_code(verdict);
}

CurvatureOperator generate(const std::string& kind, const std::vector<std::string>& params, std::uint64_t seed, long bound)
{
    auto expect = [&](std::size_t n) {
        if (params.size() != n) {
            throw InputError("gen " + kind + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(params.size()));
        }
    };
    try {
        if (kind == "constant") {
            expect(1);
            return constant_curvature(parse_rational(params[0]));
        }
        if (kind == "diagonal") {
            expect(6);
            std::vector<Rational> d;
            for (const auto& p : params) d.push_back(parse_rational(p));
            return diagonal(std::span<const Rational>(d));
        }
        if (kind == "product-spheres") {
            expect(0);
            return product_spheres();
        }
        if (kind == "random") {
            expect(0);
            return random_symmetric(seed, bound);
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    throw InputError("unknown kind '" + kind + "' (expected constant, diagonal, product-spheres or random)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sectional positivity of 4-dimensional curvature operators"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Exact decision with optional numeric cross-checks");
    analyze_cmd->add_option("file", an.input, "operator JSON file")->required();
    analyze_cmd->add_flag("--oracle", an.oracle, "run the Grassmannian oracle");
    analyze_cmd->add_flag("--witness", an.witness, "run the strong-positivity witness search");
    analyze_cmd->add_option("--seed", seed, "random seed (default 42 or $SECTIONAL_SEED)");
    analyze_cmd->add_option("--tolerance", an.tolerance, "root isolation width, a rational such as 1/4294967296");
    analyze_cmd->add_option("--perturb", an.perturb, "re-analyze R + eps*Delta for a seeded random Delta (heuristic)");
    analyze_cmd->add_option("--restarts", an.restarts, "oracle restarts")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("-o,--output", an.output, "write the report here instead of stdout");

    std::string kind;
    std::vector<std::string> params;
    long bound = 5;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Emit a fixture operator file");
    gen_cmd->add_option("kind", kind, "constant | diagonal | product-spheres | random")->required();
    gen_cmd->add_option("params", params, "rational parameters for constant and diagonal");
    gen_cmd->add_option("--seed", seed, "seed for random");
    gen_cmd->add_option("--bound", bound, "entry bound for random")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("-o,--output", gen_out, "write here instead of stdout");

    std::string oracle_in;
    std::string oracle_out;
    int restarts = 200;
    auto* oracle_cmd = app.add_subcommand("oracle", "Numeric extrema and stationary values on the Grassmannian");
    oracle_cmd->add_option("file", oracle_in, "operator JSON file")->required();
    oracle_cmd->add_option("--restarts", restarts, "number of restarts")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", seed, "random seed");
    oracle_cmd->add_option("-o,--output", oracle_out, "write here instead of stdout");

    std::string witness_in;
    std::string witness_out;
    auto* witness_cmd = app.add_subcommand("witness", "Maximize the smallest eigenvalue of R - yK");
    witness_cmd->add_option("file", witness_in, "operator JSON file")->required();
    witness_cmd->add_option("-o,--output", witness_out, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        const bool seeded = analyze_cmd->count("--seed") + gen_cmd->count("--seed") + oracle_cmd->count("--seed") > 0;
        if (!seeded) seed = default_seed();

        if (*analyze_cmd) {
            an.seed = seed;
            return run_analyze(an);
        }
        if (*gen_cmd) {
            emit(operator_to_json(generate(kind, params, seed, bound)), gen_out);
            return 0;
        }
        if (*oracle_cmd) {
            const CurvatureOperator r = load_operator(oracle_in);
            oracle::Options o;
            o.restarts = restarts;
            o.seed = seed;
            Stopwatch sw;
            ReportFile file;
            file.command = "oracle";
            file.seed = seed;
            file.input_hash = operator_hash(r);
            file.oracle = oracle::optimize(r.to_eigen(), oracle::Mode::harvest, o);
            file.timings["oracle_ms"] = sw.lap_ms();
            emit(to_json(file), oracle_out);
            return 0;
        }
        if (*witness_cmd) {
            const CurvatureOperator r = load_operator(witness_in);
            Stopwatch sw;
            ReportFile file;
            file.command = "witness";
            file.seed = seed;
            file.input_hash = operator_hash(r);
            file.witness = strongpos::witness(r.to_eigen());
            file.timings["witness_ms"] = sw.lap_ms();
            emit(to_json(file), witness_out);
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
