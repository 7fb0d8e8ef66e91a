#pragma once

// Floating-point ground truth for sectional curvature: optimizes vRv over the
// Grassmannian of oriented 2-planes in R^4, parametrized by orthonormal pairs
// (u, w) with v = u ^ w. Nothing here touches the exact polynomial machinery.

#include "sectional/curvature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace sectional::oracle {

enum class Mode { min, max, harvest };

struct Options {
    int restarts = 200;
    std::uint64_t seed = 42;
    double gradient_tolerance = 1e-10;
    int max_iterations = 10000;
    double cluster_gap = 1e-6;
};

struct PlanePoint {
    Plane plane;
    Vec6 v = Vec6::Zero();
    double value = 0.0;
};

struct ValueCluster {
    double value = 0.0;
    int multiplicity = 0;
};

struct Result {
    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();
    std::vector<ValueCluster> critical_values;
    Plane min_plane;
    Plane max_plane;
    int restarts_used = 0;
    double converged_fraction = 0.0;
    std::vector<std::string> warnings;
};

struct StationarityFit {
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

/// Least-squares multipliers (x, y) minimizing |(R - xI - yK) v| and the
/// attained norm. A near-zero residual makes (v, x, y) a critical triple of
/// the Lagrangian vRv - x (vIv - 1) - y vKv.
inline StationarityFit stationarity_residual(const Mat6& r, const Vec6& v)
{
    Eigen::Matrix<double, 6, 2> a;
    a.col(0) = v;
    a.col(1) = volume_form_eigen() * v;
    const Vec6 rv = r * v;
    const Eigen::Vector2d xy = a.colPivHouseholderQr().solve(rv);
    StationarityFit fit;
    fit.x = xy(0);
    fit.y = xy(1);
    fit.residual = (rv - a * xy).norm();
    return fit;
}

namespace detail {

// Portable standard normals: Box-Muller over 53-bit uniforms from mt19937_64.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}

    double next()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline void orthonormalize(Vec4& u, Vec4& w)
{
    u.normalize();
    w -= w.dot(u) * u;
    w.normalize();
    // second pass keeps |u.w| at round-off level
    w -= w.dot(u) * u;
    w.normalize();
}

inline Plane random_plane(NormalSource& normals)
{
    Plane p;
    do {
        for (int i = 0; i < 4; ++i) p.u(i) = normals.next();
        for (int i = 0; i < 4; ++i) p.w(i) = normals.next();
    } while (p.u.norm() < 1e-3 || (p.w - p.w.dot(p.u) / p.u.squaredNorm() * p.u).norm() < 1e-3);
    orthonormalize(p.u, p.w);
    return p;
}

inline PlanePoint evaluate(const Mat6& r, const Plane& plane)
{
    PlanePoint pt;
    pt.plane = plane;
    pt.v = plucker(plane.u, plane.w);
    pt.value = sectional_value(r, pt.v);
    return pt;
}

// Horizontal gradient of f(u, w) = (u^w) R (u^w): the Euclidean gradient
// (2 S w, -2 S u), S the skew matrix of Rv, with span{u, w} projected out.
inline std::pair<Vec4, Vec4> riemannian_gradient(const Mat6& r, const PlanePoint& pt)
{
    const Mat4 s = skew_matrix(r * pt.v);
    const Vec4& u = pt.plane.u;
    const Vec4& w = pt.plane.w;
    Vec4 gu = 2.0 * s * w;
    Vec4 gw = -2.0 * s * u;
    gu -= gu.dot(u) * u + gu.dot(w) * w;
    gw -= gw.dot(u) * u + gw.dot(w) * w;
    return {gu, gw};
}

inline double gradient_norm(const Mat6& r, const PlanePoint& pt)
{
    const auto [gu, gw] = riemannian_gradient(r, pt);
    return std::sqrt(gu.squaredNorm() + gw.squaredNorm());
}

struct Run {
    PlanePoint point;
    bool converged = false;
};

// Gradient descent (direction = -1) or ascent (+1) with Armijo backtracking
// and Gram-Schmidt retraction.
inline Run gradient_run(const Mat6& r, const Plane& start, int direction, const Options& opts)
{
    Run run;
    PlanePoint pt = evaluate(r, start);
    double step = 1.0 / (1.0 + r.norm());
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const auto [gu, gw] = riemannian_gradient(r, pt);
        const double g2 = gu.squaredNorm() + gw.squaredNorm();
        if (std::sqrt(g2) < opts.gradient_tolerance) {
            run.converged = true;
            break;
        }
        step *= 2.0;
        PlanePoint trial;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            Plane next{pt.plane.u + direction * step * gu, pt.plane.w + direction * step * gw};
            orthonormalize(next.u, next.w);
            trial = evaluate(r, next);
            if (direction * (trial.value - pt.value) >= 1e-4 * step * g2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No measurable progress left at double precision.
            run.converged = std::sqrt(g2) < 1e3 * opts.gradient_tolerance;
            break;
        }
        pt = trial;
    }
    run.point = pt;
    return run;
}

// Newton on the Lagrange system (R - xI - yK) v = 0, vv = 1, vKv = 0 in the
// unknowns (v, x, y). Converges to critical planes of every index, saddles
// included, which plain descent and ascent never reach.
inline Run lagrange_newton_run(const Mat6& r, const Plane& start, const Options& opts)
{
    const Mat6 k = volume_form_eigen();
    const Mat6 id = Mat6::Identity();
    Vec6 v = plucker(start.u, start.w);
    double x = v.dot(r * v);
    double y = (k * v).dot(r * v);
    const double scale = 1.0 + r.norm();
    Run run;
    bool solved = false;
    for (int iter = 0; iter < 100; ++iter) {
        const Mat6 shifted_op = r - x * id - y * k;
        const Vec6 kv = k * v;
        Eigen::Matrix<double, 8, 1> f;
        f.head<6>() = shifted_op * v;
        f(6) = 0.5 * (v.dot(v) - 1.0);
        f(7) = 0.5 * v.dot(kv);
        if (f.norm() < 1e-14 * scale) {
            solved = true;
            break;
        }
        Eigen::Matrix<double, 8, 8> jac = Eigen::Matrix<double, 8, 8>::Zero();
        jac.topLeftCorner<6, 6>() = shifted_op;
        jac.block<6, 1>(0, 6) = -v;
        jac.block<6, 1>(0, 7) = -kv;
        jac.block<1, 6>(6, 0) = v.transpose();
        jac.block<1, 6>(7, 0) = kv.transpose();
        Eigen::Matrix<double, 8, 1> dz = jac.fullPivLu().solve(-f);
        if (!dz.allFinite()) break;
        const double n = dz.norm();
        const double dv = dz.head<6>().norm();
        if (dv > 0.5) dz *= 0.5 / dv;
        v += dz.head<6>();
        x += dz(6);
        y += dz(7);
        if (n < 1e-15 * scale && f.norm() < 1e-10 * scale) {
            solved = true;
            break;
        }
    }
    if (!solved || !v.allFinite() || v.norm() < 0.5) return run;
    run.point = evaluate(r, split_plane(v));
    run.converged = gradient_norm(r, run.point) < std::max(opts.gradient_tolerance, 1e-9 * scale) &&
                    std::abs(run.point.value - x) < 1e-8 * scale;
    return run;
}

inline std::vector<ValueCluster> cluster(std::vector<double> values, double gap)
{
    std::sort(values.begin(), values.end());
    std::vector<ValueCluster> out;
    double sum = 0.0;
    double last = 0.0;
    for (double v : values) {
        if (out.empty() || v - last > gap) {
            if (!out.empty()) out.back().value = sum / out.back().multiplicity;
            out.push_back({v, 0});
            sum = 0.0;
        }
        sum += v;
        ++out.back().multiplicity;
        last = v;
    }
    if (!out.empty()) out.back().value = sum / out.back().multiplicity;
    return out;
}

} // namespace detail

/// Extremes (and in harvest mode all stationary values) of vRv over oriented
/// 2-planes, from seeded random orthonormal starts.
inline Result optimize(const Mat6& r, Mode mode, const Options& opts = {})
{
    if (opts.restarts < 1) throw std::invalid_argument("oracle needs at least one restart");
    detail::NormalSource normals(opts.seed);
    Result result;
    std::vector<double> stationary;
    int runs = 0;
    int converged = 0;
    auto record = [&](const detail::Run& run) {
        ++runs;
        if (!run.converged) return;
        ++converged;
        stationary.push_back(run.point.value);
    };
    auto consider_extremes = [&](const detail::Run& run) {
        if (run.point.value < result.min_value) {
            result.min_value = run.point.value;
            result.min_plane = run.point.plane;
        }
        if (run.point.value > result.max_value) {
            result.max_value = run.point.value;
            result.max_plane = run.point.plane;
        }
    };
    for (int i = 0; i < opts.restarts; ++i) {
        const Plane start = detail::random_plane(normals);
        if (mode != Mode::max) {
            const auto run = detail::gradient_run(r, start, -1, opts);
            record(run);
            consider_extremes(run);
        }
        if (mode != Mode::min) {
            const auto run = detail::gradient_run(r, start, +1, opts);
            record(run);
            consider_extremes(run);
        }
        if (mode == Mode::harvest) {
            const auto run = detail::lagrange_newton_run(r, start, opts);
            record(run);
            if (run.converged) consider_extremes(run);
        }
    }
    result.restarts_used = opts.restarts;
    result.converged_fraction = runs == 0 ? 0.0 : static_cast<double>(converged) / runs;
    if (result.converged_fraction < 0.5) {
        result.warnings.push_back("only " + std::to_string(converged) + " of " + std::to_string(runs) +
                                  " optimization runs converged");
    }
    if (mode == Mode::harvest) {
        result.critical_values = detail::cluster(std::move(stationary), opts.cluster_gap);
    } else {
        // Only the requested extreme is a stationary value worth reporting.
        std::vector<double> extremes;
        if (mode == Mode::min) extremes.push_back(result.min_value);
        if (mode == Mode::max) extremes.push_back(result.max_value);
        result.critical_values = detail::cluster(std::move(extremes), opts.cluster_gap);
    }
    return result;
}

struct SampleRange {
    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();
};

/// Brute-force range of vRv over uniformly random planes.
inline SampleRange sample_range(const Mat6& r, long samples, std::uint64_t seed)
{
    detail::NormalSource normals(seed);
    SampleRange range;
    for (long i = 0; i < samples; ++i) {
        const PlanePoint pt = detail::evaluate(r, detail::random_plane(normals));
        range.min_value = std::min(range.min_value, pt.value);
        range.max_value = std::max(range.max_value, pt.value);
    }
    return range;
}

/// Number of distinct real eigenvalues of the companion matrix of the
/// polynomial with the given ascending coefficients. Eigenvalues with
/// |imag| <= tol (1 + |real|) count as real; reals closer than tol merge.
inline int companion_real_root_count(const std::vector<double>& coeffs, double tol = 1e-8)
{
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree >= 0 && coeffs[static_cast<std::size_t>(degree)] == 0.0) --degree;
    if (degree < 1) return 0;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(degree, degree);
    const double lc = coeffs[static_cast<std::size_t>(degree)];
    for (int i = 1; i < degree; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) c(i, degree - 1) = -coeffs[static_cast<std::size_t>(i)] / lc;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
    std::vector<double> reals;
    for (int i = 0; i < degree; ++i) {
        const auto lambda = solver.eigenvalues()(i);
        if (std::abs(lambda.imag()) <= tol * (1.0 + std::abs(lambda.real()))) reals.push_back(lambda.real());
    }
    return static_cast<int>(detail::cluster(std::move(reals), tol).size());
}

} // namespace sectional::oracle
