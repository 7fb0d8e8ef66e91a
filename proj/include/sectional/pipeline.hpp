#pragma once

#include "sectional/curvature.hpp"
#include "sectional/oracle.hpp"
#include "sectional/ratpoly.hpp"
#include "sectional/strongpos.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectional {

/// p(x, y) = det(R - xI - yK) together with the slices the analysis reads.
struct CharacteristicSurface {
    BiPoly p;
    Rational y_leading;  // coefficient of y^6; always -1
    UniPoly x_slice;     // p(x, 0) = det(R - xI)
};

namespace detail {

// Fixed pseudo-random rational points for consistency checks. A fixed seed
// keeps every run reproducible while avoiding structured grids.
inline std::vector<std::pair<Rational, Rational>> check_points(std::uint64_t salt, int count)
{
    std::mt19937_64 rng(0x5ec7105a1ULL ^ salt);
    std::vector<std::pair<Rational, Rational>> pts;
    for (int i = 0; i < count; ++i) {
        auto draw = [&] {
            const long num = static_cast<long>(rng() % 2001) - 1000;
            const long den = static_cast<long>(rng() % 97) + 7;
            Rational r(num, den);
            r.canonicalize();
            return r;
        };
        Rational a = draw();
        Rational b = draw();
        pts.emplace_back(a, b);
    }
    return pts;
}

inline Rational shifted_determinant(const CurvatureOperator& r, const Rational& x, const Rational& y)
{
    return determinant(shifted(r, x, y).matrix());
}

} // namespace detail

/// Exact p by evaluation on a 7x7 grid and tensor Newton interpolation.
inline CharacteristicSurface characteristic_surface(const CurvatureOperator& r)
{
    constexpr int n = 7;
    std::vector<Rational> nodes;
    for (int i = 0; i < n; ++i) nodes.emplace_back(i - 3);

    // For each grid y, interpolate in x; then interpolate each x-coefficient in y.
    std::vector<UniPoly> rows;
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> vals;
        for (int i = 0; i < n; ++i) vals.push_back(detail::shifted_determinant(r, nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]));
        rows.push_back(interpolate(nodes, vals, Var::x));
    }
    CharacteristicSurface s;
    for (int m = 0; m < n; ++m) {
        std::vector<Rational> vals;
        for (int j = 0; j < n; ++j) vals.push_back(rows[static_cast<std::size_t>(j)].coefficient(m));
        const UniPoly col = interpolate(nodes, vals, Var::y);
        for (int k = 0; k <= col.degree(); ++k) s.p.set(m, k, col.coefficient(k));
    }

    for (const auto& [x, y] : detail::check_points(1, 3)) {
        if (s.p(x, y) != detail::shifted_determinant(r, x, y)) {
            throw std::logic_error("characteristic surface failed its cross-check at (" + to_string(x) + ", " + to_string(y) + ")");
        }
    }
    if (s.p.total_degree() > 6) throw std::logic_error("characteristic surface has total degree above 6");
    if (s.p.coefficient(6, 0) != 1) throw std::logic_error("characteristic surface: x^6 coefficient is not 1");
    s.y_leading = s.p.coefficient(0, 6);
    if (s.y_leading != -1) throw std::logic_error("characteristic surface: y^6 coefficient is not -1");
    s.x_slice = s.p.eval_y(Rational(0));
    return s;
}

/// q(x) = disc_y p(x, y), interpolated from 61 exact evaluations. The zero
/// polynomial is a legitimate result.
inline UniPoly discriminant_curve(const CharacteristicSurface& s)
{
    auto disc_at = [&](const Rational& x) {
        const UniPoly f = s.p.eval_x(x);
        if (f.degree() != 6) throw std::logic_error("p(x0, y) lost degree 6 in y");
        return discriminant(f);
    };
    std::vector<Rational> xs;
    std::vector<Rational> ys;
    for (int k = -30; k <= 30; ++k) {
        xs.emplace_back(k);
        ys.push_back(disc_at(xs.back()));
    }
    const UniPoly q = interpolate(xs, ys, Var::x);
    if (q.degree() > 30) throw std::logic_error("discriminant curve exceeds degree 30");
    for (const auto& pt : detail::check_points(2, 3)) {
        if (q(pt.first) != disc_at(pt.first)) {
            throw std::logic_error("discriminant curve failed its cross-check at x = " + to_string(pt.first));
        }
    }
    return q;
}

struct Genericity {
    bool q_zero = false;
    std::optional<Rational> disc_q;  // defined for deg q >= 2
    bool generic = false;
};

/// generic = q nonzero with nonzero discriminant. Below degree 2 there is no
/// repeated root, so a nonzero q counts as generic.
inline Genericity genericity(const UniPoly& q)
{
    Genericity g;
    g.q_zero = q.is_zero();
    if (g.q_zero) return g;
    if (q.degree() >= 2) {
        g.disc_q = discriminant(q);
        g.generic = *g.disc_q != 0;
    } else {
        g.generic = true;
    }
    return g;
}

struct CriticalCheck {
    bool critical = false;
    int kernel_dimension = 0;  // degree of the first nonzero homogeneous part
    BiPoly translated;
    std::vector<Rational> leading_form;  // a_{k,0}, ..., a_{0,k}
};

namespace detail {

inline bool strictly_same_sign(const std::vector<Rational>& c)
{
    const bool pos = std::all_of(c.begin(), c.end(), [](const Rational& v) { return v > 0; });
    const bool neg = std::all_of(c.begin(), c.end(), [](const Rational& v) { return v < 0; });
    return pos || neg;
}

inline bool strictly_alternating(const std::vector<Rational>& c)
{
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) return false;
        if (i > 0 && sign(c[i]) == sign(c[i - 1])) return false;
    }
    return true;
}

} // namespace detail

/// Sign test on the first nonzero homogeneous part of p(x + x1, y + y1).
/// Zero coefficients break both strict patterns and so mark a critical point.
inline CriticalCheck is_critical_point(const CurvatureOperator& r, const Rational& x1, const Rational& y1)
{
    CriticalCheck c;
    c.translated = characteristic_surface(shifted(r, x1, y1)).p;
    for (int k = 0; k <= 6; ++k) {
        if (!c.translated.homogeneous_part(k).is_zero()) {
            c.kernel_dimension = k;
            break;
        }
    }
    c.leading_form = c.translated.dehomogenized_coefficients(c.kernel_dimension);
    c.critical = !detail::strictly_same_sign(c.leading_form) && !detail::strictly_alternating(c.leading_form);
    return c;
}

enum class CertificateMode { none, exact, interval };

inline std::string to_string(CertificateMode m)
{
    switch (m) {
    case CertificateMode::exact: return "exact";
    case CertificateMode::interval: return "interval";
    default: return "none";
    }
}

/// Bounds on the low-order coefficients of p(x1 + s, y1 + t) over a box
/// |x1 - xc| <= wx, |y1 - yc| <= wy, evaluated in exact rationals.
struct CoefficientBounds {
    Rational a00_upper;
    Rational a01_upper;
    Rational a10_lower;
    Rational x_radius;
    Rational y_radius;
};

struct CriticalPoint {
    RootInterval x_interval;
    double x = 0.0;
    std::optional<Rational> x_exact;
    double y = 0.0;
    std::optional<Rational> y_exact;
    double y_radius = 0.0;
    int kernel_dimension = 0;
    std::optional<Plane> plane;
    double plane_wedge = 0.0;    // |vKv| of the recovered kernel form
    double plane_residual = 0.0; // |(R - xI - yK) v|
    bool certified = false;
    CertificateMode certificate = CertificateMode::none;
    // Exact certificates keep a00, a01, a10 of the translated polynomial.
    std::optional<std::array<Rational, 3>> exact_coefficients;
    std::optional<CoefficientBounds> bounds;
};

/// Margin the a10 lower bound must clear over the a01 upper bound.
inline constexpr double kCertificationMargin = 1e3;
/// a00 must vanish to this fraction of a10: the implied x-offset of the
/// curve p = 0 from the box. A relative margin alone accepts the double
/// root of a neighbouring root of q.
inline constexpr int kValueExponent = -40;

namespace detail {

inline Rational power(const Rational& b, int e)
{
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Centered-form bounds over the box; exact, so no rounding control is needed.
inline CoefficientBounds box_bounds(const BiPoly& p, const Rational& xc, const Rational& wx, const Rational& yc, const Rational& wy)
{
    const BiPoly t = p.translated(xc, yc);
    CoefficientBounds b;
    b.x_radius = wx;
    b.y_radius = wy;
    Rational a10_spread(0);
    for (const auto& [e, v] : t.terms()) {
        const auto [m, n] = e;
        const Rational mag = abs(v);
        b.a00_upper += mag * power(wx, m) * power(wy, n);
        if (n >= 1) b.a01_upper += mag * n * power(wx, m) * power(wy, n - 1);
        if (m >= 1 && !(m == 1 && n == 0)) a10_spread += mag * m * power(wx, m - 1) * power(wy, n);
    }
    b.a10_lower = abs(t.coefficient(1, 0)) - a10_spread;
    return b;
}

inline bool bounds_certify(const CoefficientBounds& b)
{
    const Rational margin = from_double(kCertificationMargin);
    return b.a10_lower > 0 && b.a10_lower > margin * b.a01_upper && b.a00_upper <= b.a10_lower * pow2(kValueExponent);
}

// Kernel 2-form of R - xI - yK: the smallest-|eigenvalue| direction, or a
// decomposable direction inside a higher-dimensional kernel.
inline void recover_plane(const Mat6& r, CriticalPoint& cp)
{
    const Mat6 m = r - cp.x * Mat6::Identity() - cp.y * volume_form_eigen();
    Eigen::SelfAdjointEigenSolver<Mat6> solver(m);
    std::array<int, 6> order{0, 1, 2, 3, 4, 5};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(solver.eigenvalues()(a)) < std::abs(solver.eigenvalues()(b)); });
    Vec6 v = solver.eigenvectors().col(order[0]);
    if (cp.kernel_dimension > 1) {
        std::vector<Vec6> kernel;
        for (int i = 0; i < cp.kernel_dimension; ++i) kernel.push_back(solver.eigenvectors().col(order[static_cast<std::size_t>(i)]));
        const auto dirs = decomposable_directions(kernel, 1e-8);
        if (!dirs.empty()) v = dirs.front();
    }
    cp.plane_wedge = std::abs(wedge_self(v));
    cp.plane_residual = (m * v).norm();
    if (cp.plane_wedge < 1e-6) cp.plane = split_plane(v);
}

} // namespace detail

struct Enumeration {
    std::vector<CriticalPoint> points;
    std::vector<std::string> violations;
};

/// For every real root x1 of q, locate the real multiple roots y1 of
/// p(x1, y) and certify (x1, y1). Exact when x1 is rational, by a box
/// bound on the translated polynomial otherwise. When require_each is set
/// (generic operators), an x1 without a certified point is reported.
inline Enumeration enumerate_critical_points(const CurvatureOperator& r, const CharacteristicSurface& s,
                                             const UniPoly& q, const std::vector<RootInterval>& roots,
                                             bool require_each)
{
    Enumeration out;
    const Mat6 re = r.to_eigen();
    const UniPoly q_sqf = q.is_zero() ? q : squarefree_part(q);
    for (const RootInterval& iv : roots) {
        std::vector<CriticalPoint> found;
        if (iv.pinned()) {
            const Rational& x1 = iv.lower;
            const UniPoly f = s.p.eval_x(x1);
            const UniPoly g = poly_gcd(f, f.derivative());
            if (g.degree() >= 1) {
                for (const RootInterval& jv : isolate_real_roots(g, pow2(-64))) {
                    CriticalPoint cp;
                    cp.x_interval = iv;
                    cp.x_exact = x1;
                    cp.x = x1.get_d();
                    if (jv.pinned()) {
                        const CriticalCheck check = is_critical_point(r, x1, jv.lower);
                        cp.y_exact = jv.lower;
                        cp.y = jv.lower.get_d();
                        cp.kernel_dimension = check.kernel_dimension;
                        cp.exact_coefficients = std::array<Rational, 3>{check.translated.coefficient(0, 0),
                                                                          check.translated.coefficient(0, 1),
                                                                          check.translated.coefficient(1, 0)};
                        cp.certified = check.critical;
                        cp.certificate = check.critical ? CertificateMode::exact : CertificateMode::none;
                    } else {
                        const Rational yc = jv.midpoint();
                        const Rational wy = jv.width() / 2;
                        cp.y = yc.get_d();
                        cp.y_radius = wy.get_d();
                        cp.kernel_dimension = 1;
                        cp.bounds = detail::box_bounds(s.p, x1, Rational(0), yc, wy);
                        cp.certified = detail::bounds_certify(*cp.bounds);
                        cp.certificate = cp.certified ? CertificateMode::interval : CertificateMode::none;
                    }
                    found.push_back(std::move(cp));
                }
            }
        } else {
            const RootInterval fine = refine_root(q_sqf, iv, pow2(-80));
            const Rational xc = fine.midpoint();
            const Rational wx = fine.width() / 2;
            const UniPoly fc = s.p.eval_x(xc);
            // Near a double root of p(x1, .), p(xc, .)' has a nearby simple root.
            for (const RootInterval& jv : isolate_real_roots(fc.derivative(), pow2(-64))) {
                const Rational yc = jv.midpoint();
                const Rational scale = std::max(Rational(1), Rational(abs(yc)));
                const Rational wy = pow2(-48) * scale;
                CriticalPoint cp;
                cp.x_interval = iv;
                cp.x = xc.get_d();
                cp.y = yc.get_d();
                cp.y_radius = wy.get_d();
                cp.kernel_dimension = 1;
                cp.bounds = detail::box_bounds(s.p, xc, wx, yc, wy);
                cp.certified = detail::bounds_certify(*cp.bounds);
                if (!cp.certified) continue;
                cp.certificate = CertificateMode::interval;
                found.push_back(std::move(cp));
            }
        }
        const bool any = std::any_of(found.begin(), found.end(), [](const CriticalPoint& c) { return c.certified; });
        if (require_each && !any) {
            out.violations.push_back("no certified real multiple root of p(x1, y) for the root of q near x = " +
                                     std::to_string(iv.approx()));
        }
        for (auto& cp : found) {
            detail::recover_plane(re, cp);
            out.points.push_back(std::move(cp));
        }
    }
    return out;
}

enum class Verdict { positive, nonnegative, not_nonnegative, positive_sufficient_only, degenerate_fallback };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::positive: return "POSITIVE";
    case Verdict::nonnegative: return "NONNEGATIVE";
    case Verdict::not_nonnegative: return "NOT_NONNEGATIVE";
    case Verdict::positive_sufficient_only: return "POSITIVE_SUFFICIENT_ONLY";
    default: return "DEGENERATE_FALLBACK";
    }
}

inline Verdict parse_verdict(const std::string& s)
{
    for (Verdict v : {Verdict::positive, Verdict::nonnegative, Verdict::not_nonnegative, Verdict::positive_sufficient_only,
                      Verdict::degenerate_fallback}) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown verdict: " + s);
}

/// CLI exit code for a verdict: 0 certified positive/nonnegative, 1 certified
/// negative somewhere, 2 undecided.
inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::positive:
    case Verdict::nonnegative:
    case Verdict::positive_sufficient_only: return 0;
    case Verdict::not_nonnegative: return 1;
    default: return 2;
    }
}

enum class Definiteness { positive_definite, negative_definite, indefinite_or_singular };

inline std::string to_string(Definiteness d)
{
    switch (d) {
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::negative_definite: return "negative_definite";
    default: return "indefinite_or_singular";
    }
}

/// A symmetric matrix is positive definite iff the coefficients of its
/// characteristic polynomial det(xI - R) are all nonzero and alternate in sign.
/// In even dimension det(xI - R) = det(R - xI) = p(x, 0).
inline Definiteness classify_definiteness(const UniPoly& char_poly)
{
    const auto& c = char_poly.coefficients();
    if (c.empty()) return Definiteness::indefinite_or_singular;
    if (detail::strictly_alternating(c)) return Definiteness::positive_definite;
    // R negative definite iff -R positive definite: det(xI + R) has coefficients c_k (-1)^(d-k), all positive.
    if (detail::strictly_same_sign(c)) return Definiteness::negative_definite;
    return Definiteness::indefinite_or_singular;
}

struct SectionalBounds {
    RootInterval lower;
    RootInterval upper;
};

struct OracleComparison {
    double min_difference = 0.0;  // oracle min - lower bound midpoint
    double max_difference = 0.0;
    bool consistent = false;      // both within 1e-6
};

struct AnalyzeOptions {
    Rational tolerance = default_isolation_tolerance();
    bool run_oracle = false;
    bool run_witness = false;
    bool enumerate = true;
    oracle::Options oracle;
    strongpos::Options witness;
    std::optional<Rational> perturb;  // heuristic escape for undecided cases
    std::uint64_t seed = 42;
};

struct PerturbationResult {
    Rational epsilon;
    CurvatureOperator perturbed;
    Verdict verdict = Verdict::degenerate_fallback;
    std::optional<SectionalBounds> bounds;
    std::vector<RootInterval> root_intervals;
};

struct AnalysisReport {
    ValidationReport validation;
    BiPoly p;
    UniPoly q;
    bool q_is_identically_zero = false;
    std::optional<Rational> disc_q;
    bool generic = false;
    std::vector<RootInterval> root_intervals;
    int negative_roots = 0;
    bool zero_is_root = false;
    Verdict verdict = Verdict::degenerate_fallback;
    std::optional<SectionalBounds> bounds;
    std::vector<CriticalPoint> critical_points;
    Definiteness definiteness = Definiteness::indefinite_or_singular;
    std::optional<oracle::Result> oracle;
    std::optional<strongpos::WitnessResult> witness;
    std::optional<OracleComparison> oracle_comparison;
    std::optional<PerturbationResult> perturbation;
    std::vector<std::string> contract_violations;
};

namespace detail {

struct RootVerdict {
    Verdict verdict = Verdict::degenerate_fallback;
    int negatives = 0;
    bool zero_root = false;
    std::optional<SectionalBounds> bounds;
};

inline RootVerdict classify_roots(const UniPoly& q, const Genericity& g, const std::vector<RootInterval>& roots)
{
    RootVerdict rv;
    if (g.q_zero) return rv;
    rv.zero_root = q(Rational(0)) == 0;
    rv.negatives = count_real_roots(q, std::nullopt, Rational(0)) - (rv.zero_root ? 1 : 0);
    if (g.generic) {
        if (roots.empty()) return rv;
        rv.verdict = rv.negatives > 0 ? Verdict::not_nonnegative : rv.zero_root ? Verdict::nonnegative : Verdict::positive;
        rv.bounds = SectionalBounds{roots.front(), roots.back()};
    } else {
        rv.verdict = (rv.negatives == 0 && !rv.zero_root) ? Verdict::positive_sufficient_only : Verdict::degenerate_fallback;
    }
    return rv;
}

} // namespace detail

/// End-to-end decision. Throws std::invalid_argument for non-symmetric input.
inline AnalysisReport analyze(const CurvatureOperator& r, const AnalyzeOptions& opts = {})
{
    AnalysisReport rep;
    rep.validation = validate_operator(r);
    if (!rep.validation.ok()) throw std::invalid_argument(rep.validation.errors.front());

    const CharacteristicSurface s = characteristic_surface(r);
    rep.p = s.p;
    rep.definiteness = classify_definiteness(s.x_slice);
    rep.q = discriminant_curve(s);
    const Genericity g = genericity(rep.q);
    rep.q_is_identically_zero = g.q_zero;
    rep.disc_q = g.disc_q;
    rep.generic = g.generic;
    if (!g.q_zero) rep.root_intervals = isolate_real_roots(rep.q, opts.tolerance);

    const auto rv = detail::classify_roots(rep.q, g, rep.root_intervals);
    rep.verdict = rv.verdict;
    rep.negative_roots = rv.negatives;
    rep.zero_is_root = rv.zero_root;
    rep.bounds = rv.bounds;
    if (g.generic && rep.root_intervals.empty()) {
        rep.contract_violations.push_back("generic operator whose discriminant curve has no real root");
    }

    if (!g.q_zero && opts.enumerate) {
        Enumeration e = enumerate_critical_points(r, s, rep.q, rep.root_intervals, g.generic);
        rep.critical_points = std::move(e.points);
        for (auto& v : e.violations) rep.contract_violations.push_back(std::move(v));
    }
    // Off the generic stratum a negative root of q may be spurious, but a
    // certified critical point at x1 < 0 carries a decomposable kernel form v
    // with vRv = x1, which settles the question.
    if (rep.verdict == Verdict::degenerate_fallback && !g.q_zero) {
        const bool negative_plane = std::any_of(rep.critical_points.begin(), rep.critical_points.end(), [](const CriticalPoint& c) {
            return c.certified && c.x_interval.sign_class == SignClass::negative;
        });
        if (negative_plane) rep.verdict = Verdict::not_nonnegative;
    }

    const bool fallback = rep.verdict == Verdict::degenerate_fallback;
    const Mat6 re = r.to_eigen();
    if (opts.run_oracle || fallback) {
        oracle::Options o = opts.oracle;
        o.seed = opts.seed;
        rep.oracle = oracle::optimize(re, oracle::Mode::harvest, o);
    }
    if (opts.run_witness || fallback) rep.witness = strongpos::witness(re, opts.witness);
    if (rep.oracle && rep.bounds) {
        OracleComparison c;
        c.min_difference = rep.oracle->min_value - rep.bounds->lower.approx();
        c.max_difference = rep.oracle->max_value - rep.bounds->upper.approx();
        c.consistent = std::abs(c.min_difference) < 1e-6 && std::abs(c.max_difference) < 1e-6;
        rep.oracle_comparison = c;
    }

    if (opts.perturb) {
        PerturbationResult pr;
        pr.epsilon = *opts.perturb;
        const CurvatureOperator delta = random_symmetric(opts.seed, 5);
        pr.perturbed = CurvatureOperator(r.matrix() + delta.matrix() * pr.epsilon);
        // The inner run never falls back to numerics: only the exact verdict is used.
        const CharacteristicSurface ps = characteristic_surface(pr.perturbed);
        const UniPoly pq = discriminant_curve(ps);
        const Genericity pg = genericity(pq);
        if (!pg.q_zero) pr.root_intervals = isolate_real_roots(pq, opts.tolerance);
        const auto prv = detail::classify_roots(pq, pg, pr.root_intervals);
        pr.verdict = prv.verdict;
        pr.bounds = prv.bounds;
        rep.perturbation = std::move(pr);
    }
    return rep;
}

} // namespace sectional
