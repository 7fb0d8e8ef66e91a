#pragma once

#include "sectional/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectional {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "sectional-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed operator files and other user-input problems (CLI exit code 3).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---- operator files ----

inline json operator_to_json(const CurvatureOperator& r)
{
    json rows = json::array();
    for (std::size_t i = 0; i < 6; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < 6; ++j) row.push_back(to_string(r(i, j)));
        rows.push_back(row);
    }
    return json{{"dim", 4}, {"basis", kBasisTag}, {"matrix", rows}};
}

/// Parses and shape-checks an operator file. Symmetry is checked separately
/// by validate_operator so its diagnostic names the offending entry.
inline CurvatureOperator operator_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("operator file must be a JSON object");
    if (!j.contains("dim") || j["dim"] != 4) throw InputError("operator file: dim must be 4");
    if (!j.contains("basis") || j["basis"] != kBasisTag) {
        throw InputError(std::string("operator file: basis must be \"") + kBasisTag + "\"");
    }
    if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != 6) {
        throw InputError("operator file: matrix must have 6 rows");
    }
    RatMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i) {
        const json& row = j["matrix"][i];
        if (!row.is_array() || row.size() != 6) throw InputError("operator file: row " + std::to_string(i) + " must have 6 entries");
        for (std::size_t k = 0; k < 6; ++k) {
            const json& e = row[k];
            try {
                if (e.is_string()) {
                    m(i, k) = parse_rational(e.get<std::string>());
                } else if (e.is_number_integer()) {
                    m(i, k) = Rational(e.dump());
                } else {
                    throw InputError("entry must be a \"num/den\" string or an integer");
                }
            } catch (const std::invalid_argument& ex) {
                throw InputError("operator file: entry (" + std::to_string(i) + "," + std::to_string(k) + "): " + ex.what());
            } catch (const InputError& ex) {
                throw InputError("operator file: entry (" + std::to_string(i) + "," + std::to_string(k) + "): " + ex.what());
            }
        }
    }
    return CurvatureOperator(std::move(m));
}

inline CurvatureOperator parse_operator_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return operator_from_json(j);
}

inline std::string operator_hash(const CurvatureOperator& r) { return fnv1a64(operator_to_json(r).dump()); }

// ---- pieces ----

namespace io {

inline json rational(const Rational& r) { return to_string(r); }
inline Rational rational(const json& j) { return parse_rational(j.get<std::string>()); }

inline json opt_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }
inline std::optional<Rational> opt_rational(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return rational(j);
}

inline json unipoly(const UniPoly& p)
{
    json a = json::array();
    for (const auto& c : p.coefficients()) a.push_back(to_string(c));
    return a;
}
inline UniPoly unipoly(const json& j, Var v)
{
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(rational(e));
    return UniPoly(std::move(c), v);
}

inline json bipoly(const BiPoly& p)
{
    json a = json::array();
    for (const auto& [e, c] : p.terms()) a.push_back(json{{"x", e.first}, {"y", e.second}, {"c", to_string(c)}});
    return a;
}
inline BiPoly bipoly(const json& j)
{
    BiPoly p;
    for (const auto& t : j) p.set(t["x"].get<int>(), t["y"].get<int>(), rational(t["c"]));
    return p;
}

inline json interval(const RootInterval& iv)
{
    return json{{"lower", to_string(iv.lower)},
                {"upper", to_string(iv.upper)},
                {"multiplicity_in_squarefree_part", iv.multiplicity_in_squarefree_part},
                {"sign_class", to_string(iv.sign_class)},
                {"numeric", {{"approx", iv.approx()}}}};
}
inline RootInterval interval(const json& j)
{
    RootInterval iv;
    iv.lower = rational(j["lower"]);
    iv.upper = rational(j["upper"]);
    iv.multiplicity_in_squarefree_part = j["multiplicity_in_squarefree_part"].get<int>();
    iv.sign_class = parse_sign_class(j["sign_class"].get<std::string>());
    return iv;
}

inline json intervals(const std::vector<RootInterval>& v)
{
    json a = json::array();
    for (const auto& iv : v) a.push_back(interval(iv));
    return a;
}
inline std::vector<RootInterval> intervals(const json& j)
{
    std::vector<RootInterval> v;
    for (const auto& e : j) v.push_back(interval(e));
    return v;
}

inline json bounds(const std::optional<SectionalBounds>& b)
{
    if (!b) return nullptr;
    return json{{"lower", interval(b->lower)}, {"upper", interval(b->upper)}};
}
inline std::optional<SectionalBounds> bounds(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return SectionalBounds{interval(j["lower"]), interval(j["upper"])};
}

inline json vec(const Vec4& v) { return json::array({v(0), v(1), v(2), v(3)}); }
inline json vec(const Vec6& v) { return json::array({v(0), v(1), v(2), v(3), v(4), v(5)}); }
inline Vec4 vec4(const json& j)
{
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}
inline Vec6 vec6(const json& j)
{
    Vec6 v;
    for (int i = 0; i < 6; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}

inline json plane(const Plane& p) { return json{{"u", vec(p.u)}, {"w", vec(p.w)}}; }
inline Plane plane(const json& j) { return Plane{vec4(j["u"]), vec4(j["w"])}; }

inline json strings(const std::vector<std::string>& v) { return json(v); }
inline std::vector<std::string> strings(const json& j) { return j.get<std::vector<std::string>>(); }

inline json critical_point(const CriticalPoint& c)
{
    json j;
    j["x_interval"] = interval(c.x_interval);
    j["x_exact"] = opt_rational(c.x_exact);
    j["y_exact"] = opt_rational(c.y_exact);
    j["kernel_dimension"] = c.kernel_dimension;
    j["certified"] = c.certified;
    j["certificate"] = to_string(c.certificate);
    if (c.exact_coefficients) {
        const auto& e = *c.exact_coefficients;
        j["exact_coefficients"] = {{"a00", rational(e[0])}, {"a01", rational(e[1])}, {"a10", rational(e[2])}};
    } else {
        j["exact_coefficients"] = nullptr;
    }
    if (c.bounds) {
        j["coefficient_bounds"] = {{"a00_upper", rational(c.bounds->a00_upper)},
                                   {"a01_upper", rational(c.bounds->a01_upper)},
                                   {"a10_lower", rational(c.bounds->a10_lower)},
                                   {"x_radius", rational(c.bounds->x_radius)},
                                   {"y_radius", rational(c.bounds->y_radius)}};
    } else {
        j["coefficient_bounds"] = nullptr;
    }
    j["numeric"] = {{"x", c.x},
                    {"y", c.y},
                    {"y_radius", c.y_radius},
                    {"plane", c.plane ? plane(*c.plane) : json(nullptr)},
                    {"plane_wedge", c.plane_wedge},
                    {"plane_residual", c.plane_residual}};
    return j;
}

inline CertificateMode certificate_mode(const std::string& s)
{
    if (s == "exact") return CertificateMode::exact;
    if (s == "interval") return CertificateMode::interval;
    if (s == "none") return CertificateMode::none;
    throw std::invalid_argument("unknown certificate mode: " + s);
}

inline CriticalPoint critical_point(const json& j)
{
    CriticalPoint c;
    c.x_interval = interval(j["x_interval"]);
    c.x_exact = opt_rational(j["x_exact"]);
    c.y_exact = opt_rational(j["y_exact"]);
    c.kernel_dimension = j["kernel_dimension"].get<int>();
    c.certified = j["certified"].get<bool>();
    c.certificate = certificate_mode(j["certificate"].get<std::string>());
    if (!j["exact_coefficients"].is_null()) {
        const json& e = j["exact_coefficients"];
        c.exact_coefficients = std::array<Rational, 3>{rational(e["a00"]), rational(e["a01"]), rational(e["a10"])};
    }
    if (!j["coefficient_bounds"].is_null()) {
        const json& b = j["coefficient_bounds"];
        c.bounds = CoefficientBounds{rational(b["a00_upper"]), rational(b["a01_upper"]), rational(b["a10_lower"]),
                                     rational(b["x_radius"]), rational(b["y_radius"])};
    }
    const json& n = j["numeric"];
    c.x = n["x"].get<double>();
    c.y = n["y"].get<double>();
    c.y_radius = n["y_radius"].get<double>();
    if (!n["plane"].is_null()) c.plane = plane(n["plane"]);
    c.plane_wedge = n["plane_wedge"].get<double>();
    c.plane_residual = n["plane_residual"].get<double>();
    return c;
}

inline json validation(const ValidationReport& v)
{
    return json{{"symmetric", v.symmetric},
                {"bianchi_trace", rational(v.bianchi_trace)},
                {"errors", v.errors},
                {"warnings", v.warnings}};
}
inline ValidationReport validation(const json& j)
{
    ValidationReport v;
    v.symmetric = j["symmetric"].get<bool>();
    v.bianchi_trace = rational(j["bianchi_trace"]);
    v.errors = strings(j["errors"]);
    v.warnings = strings(j["warnings"]);
    return v;
}

} // namespace io

inline json to_json(const oracle::Result& r)
{
    json clusters = json::array();
    for (const auto& c : r.critical_values) clusters.push_back(json{{"value", c.value}, {"multiplicity", c.multiplicity}});
    return json{{"restarts_used", r.restarts_used},
                {"warnings", r.warnings},
                {"numeric",
                 {{"min_value", r.min_value},
                  {"max_value", r.max_value},
                  {"critical_values", clusters},
                  {"min_plane", io::plane(r.min_plane)},
                  {"max_plane", io::plane(r.max_plane)},
                  {"converged_fraction", r.converged_fraction}}}};
}

inline oracle::Result oracle_from_json(const json& j)
{
    oracle::Result r;
    r.restarts_used = j["restarts_used"].get<int>();
    r.warnings = io::strings(j["warnings"]);
    const json& n = j["numeric"];
    r.min_value = n["min_value"].get<double>();
    r.max_value = n["max_value"].get<double>();
    for (const auto& c : n["critical_values"]) r.critical_values.push_back({c["value"].get<double>(), c["multiplicity"].get<int>()});
    r.min_plane = io::plane(n["min_plane"]);
    r.max_plane = io::plane(n["max_plane"]);
    r.converged_fraction = n["converged_fraction"].get<double>();
    return r;
}

inline json to_json(const strongpos::WitnessResult& w)
{
    json basis = json::array();
    for (const auto& v : w.zero_set_basis) basis.push_back(io::vec(v));
    json planes = json::array();
    for (const auto& p : w.decomposable_zero_planes) planes.push_back(io::plane(p));
    return json{{"strongly_positive", w.strongly_positive},
                {"uniqueness_violation", w.uniqueness_violation},
                {"numeric",
                 {{"y1", w.y1},
                  {"alpha1", w.alpha1},
                  {"bracket", w.bracket},
                  {"flat_width", w.flat_width},
                  {"zero_set_basis", basis},
                  {"decomposable_zero_planes", planes}}}};
}

inline strongpos::WitnessResult witness_from_json(const json& j)
{
    strongpos::WitnessResult w;
    w.strongly_positive = j["strongly_positive"].get<bool>();
    w.uniqueness_violation = j["uniqueness_violation"].get<bool>();
    const json& n = j["numeric"];
    w.y1 = n["y1"].get<double>();
    w.alpha1 = n["alpha1"].get<double>();
    w.bracket = n["bracket"].get<double>();
    w.flat_width = n["flat_width"].get<double>();
    for (const auto& v : n["zero_set_basis"]) w.zero_set_basis.push_back(io::vec6(v));
    for (const auto& p : n["decomposable_zero_planes"]) w.decomposable_zero_planes.push_back(io::plane(p));
    return w;
}

/// The exact analysis; oracle and witness sections are written separately.
inline json to_json(const AnalysisReport& a)
{
    json j;
    j["validation"] = io::validation(a.validation);
    j["verdict"] = to_string(a.verdict);
    j["p"] = io::bipoly(a.p);
    j["q"] = io::unipoly(a.q);
    j["q_is_identically_zero"] = a.q_is_identically_zero;
    j["disc_q"] = io::opt_rational(a.disc_q);
    j["generic"] = a.generic;
    j["root_intervals"] = io::intervals(a.root_intervals);
    j["negative_roots"] = a.negative_roots;
    j["zero_is_root"] = a.zero_is_root;
    j["bounds"] = io::bounds(a.bounds);
    j["definiteness"] = to_string(a.definiteness);
    json cps = json::array();
    for (const auto& c : a.critical_points) cps.push_back(io::critical_point(c));
    j["critical_points"] = cps;
    j["contract_violations"] = a.contract_violations;
    if (a.oracle_comparison) {
        j["oracle_comparison"] = {{"consistent", a.oracle_comparison->consistent},
                                  {"numeric",
                                   {{"min_difference", a.oracle_comparison->min_difference},
                                    {"max_difference", a.oracle_comparison->max_difference}}}};
    } else {
        j["oracle_comparison"] = nullptr;
    }
    if (a.perturbation) {
        const auto& p = *a.perturbation;
        j["perturbation"] = {{"heuristic", true},
                             {"epsilon", io::rational(p.epsilon)},
                             {"operator", operator_to_json(p.perturbed)},
                             {"verdict", to_string(p.verdict)},
                             {"bounds", io::bounds(p.bounds)},
                             {"root_intervals", io::intervals(p.root_intervals)}};
    } else {
        j["perturbation"] = nullptr;
    }
    json bounds = a.bounds ? json::array({a.bounds->lower.approx(), a.bounds->upper.approx()}) : json(nullptr);
    j["numeric"] = {{"bounds", bounds}};
    return j;
}

inline AnalysisReport analysis_from_json(const json& j)
{
    AnalysisReport a;
    a.validation = io::validation(j["validation"]);
    a.verdict = parse_verdict(j["verdict"].get<std::string>());
    a.p = io::bipoly(j["p"]);
    a.q = io::unipoly(j["q"], Var::x);
    a.q_is_identically_zero = j["q_is_identically_zero"].get<bool>();
    a.disc_q = io::opt_rational(j["disc_q"]);
    a.generic = j["generic"].get<bool>();
    a.root_intervals = io::intervals(j["root_intervals"]);
    a.negative_roots = j["negative_roots"].get<int>();
    a.zero_is_root = j["zero_is_root"].get<bool>();
    a.bounds = io::bounds(j["bounds"]);
    const std::string d = j["definiteness"].get<std::string>();
    for (Definiteness k : {Definiteness::positive_definite, Definiteness::negative_definite, Definiteness::indefinite_or_singular}) {
        if (to_string(k) == d) a.definiteness = k;
    }
    for (const auto& c : j["critical_points"]) a.critical_points.push_back(io::critical_point(c));
    a.contract_violations = io::strings(j["contract_violations"]);
    if (!j["oracle_comparison"].is_null()) {
        const json& c = j["oracle_comparison"];
        a.oracle_comparison = OracleComparison{c["numeric"]["min_difference"].get<double>(),
                                               c["numeric"]["max_difference"].get<double>(), c["consistent"].get<bool>()};
    }
    if (!j["perturbation"].is_null()) {
        const json& p = j["perturbation"];
        PerturbationResult pr;
        pr.epsilon = io::rational(p["epsilon"]);
        pr.perturbed = operator_from_json(p["operator"]);
        pr.verdict = parse_verdict(p["verdict"].get<std::string>());
        pr.bounds = io::bounds(p["bounds"]);
        pr.root_intervals = io::intervals(p["root_intervals"]);
        a.perturbation = std::move(pr);
    }
    return a;
}

/// Everything one CLI invocation writes. Timings come last so that reports
/// of identical runs differ only in that trailing section.
struct ReportFile {
    std::string command;
    std::uint64_t seed = 0;
    std::string input_hash;
    std::optional<AnalysisReport> analysis;
    std::optional<oracle::Result> oracle;
    std::optional<strongpos::WitnessResult> witness;
    std::map<std::string, double> timings;
};

inline json to_json(const ReportFile& r)
{
    json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kToolVersion;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["input_hash"] = r.input_hash;
    j["analysis"] = r.analysis ? to_json(*r.analysis) : json(nullptr);
    j["oracle"] = r.oracle ? to_json(*r.oracle) : json(nullptr);
    j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    j["timings"] = r.timings;
    return j;
}

inline ReportFile report_from_json(const json& j)
{
    if (j.value("schema", "") != kReportSchema) throw InputError("unsupported report schema");
    ReportFile r;
    r.command = j["command"].get<std::string>();
    r.seed = j["seed"].get<std::uint64_t>();
    r.input_hash = j["input_hash"].get<std::string>();
    if (!j["analysis"].is_null()) r.analysis = analysis_from_json(j["analysis"]);
    if (!j["oracle"].is_null()) r.oracle = oracle_from_json(j["oracle"]);
    if (!j["witness"].is_null()) r.witness = witness_from_json(j["witness"]);
    r.timings = j["timings"].get<std::map<std::string, double>>();
    return r;
}

} // namespace sectional
