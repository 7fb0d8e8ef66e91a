#pragma once

#include "sectional/curvature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sectional::strongpos {

struct Options {
    double positivity_tolerance = 1e-9;  // alpha1 above this counts as strongly positive
    double bracket_width = 1e-12;        // golden-section stopping width
    double kernel_tolerance = 1e-9;      // eigenvalues below this span Z(R)
    double flat_width_limit = 1e-8;      // wider flat maxima contradict uniqueness of y1
};

struct WitnessResult {
    double y1 = 0.0;
    double alpha1 = 0.0;  // smallest eigenvalue of R - y1 K
    bool strongly_positive = false;
    double bracket = 0.0;  // search ran over [-bracket, bracket]
    double flat_width = 0.0;
    bool uniqueness_violation = false;
    std::vector<Vec6> zero_set_basis;
    std::vector<Plane> decomposable_zero_planes;
};

/// alpha1(y): smallest eigenvalue of R - y K. Concave in y as a minimum of
/// affine functions v(R - yK)v over unit v.
inline double alpha1(const Mat6& r, double y)
{
    const Mat6 m = r - y * volume_form_eigen();
    Eigen::SelfAdjointEigenSolver<Mat6> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

namespace detail {

// Edge of the superlevel set {alpha1 >= level} between inside (where it holds)
// and outside (where it fails); concavity makes the set an interval.
inline double level_edge(const Mat6& r, double inside, double outside, double level)
{
    for (int i = 0; i < 200 && std::abs(outside - inside) > 1e-15 * (1.0 + std::abs(inside)); ++i) {
        const double mid = 0.5 * (inside + outside);
        if (alpha1(r, mid) >= level) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return inside;
}

// Width of a genuinely flat top. Superlevel widths behave like W + a sqrt(tau)
// for a smooth peak and W + b tau for a kink, so 2 w(tau/4) - w(tau) removes
// the peak shape and leaves W (clamped at zero).
inline double flat_width(const Mat6& r, double y1, double peak, double bracket)
{
    auto width = [&](double tau) {
        const double level = peak - tau;
        return level_edge(r, y1, bracket, level) - level_edge(r, y1, -bracket, level);
    };
    const double tau = 1e-10;
    return std::max(0.0, 2.0 * width(tau / 4.0) - width(tau));
}

} // namespace detail

/// Kernel of R - y1 K at the witness and the decomposable directions in it.
inline void extract_zero_set(const Mat6& r, WitnessResult& w, const Options& opts)
{
    Eigen::SelfAdjointEigenSolver<Mat6> solver(r - w.y1 * volume_form_eigen());
    w.zero_set_basis.clear();
    for (int i = 0; i < 6; ++i) {
        if (solver.eigenvalues()(i) < opts.kernel_tolerance) w.zero_set_basis.push_back(solver.eigenvectors().col(i));
    }
    w.decomposable_zero_planes.clear();
    for (const Vec6& g : decomposable_directions(w.zero_set_basis, opts.kernel_tolerance)) {
        w.decomposable_zero_planes.push_back(split_plane(g));
    }
}

/// Maximizes alpha1 by golden-section search on [-B, B] with
/// B = lambda_max(R) - lambda_min(R) + 1; alpha1(y) <= lambda_max(R) - |y|
/// drops below alpha1(0) >= lambda_min(R) outside that bracket.
inline WitnessResult witness(const Mat6& r, const Options& opts = {})
{
    Eigen::SelfAdjointEigenSolver<Mat6> spectrum(r, Eigen::EigenvaluesOnly);
    const double bracket = spectrum.eigenvalues()(5) - spectrum.eigenvalues()(0) + 1.0;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -bracket;
    double b = bracket;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = alpha1(r, c);
    double fd = alpha1(r, d);
    while (b - a > opts.bracket_width) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = alpha1(r, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = alpha1(r, d);
        }
    }
    WitnessResult w;
    w.bracket = bracket;
    w.y1 = 0.5 * (a + b);
    w.alpha1 = alpha1(r, w.y1);
    w.strongly_positive = w.alpha1 > opts.positivity_tolerance;
    w.flat_width = detail::flat_width(r, w.y1, w.alpha1, bracket);
    if (std::abs(w.alpha1) <= opts.positivity_tolerance) {
        extract_zero_set(r, w, opts);
        w.uniqueness_violation = !w.decomposable_zero_planes.empty() && w.flat_width > opts.flat_width_limit;
    }
    return w;
}

/// Z(R): decomposable directions of zero sectional curvature, realized as the
/// null cone of K inside ker(R - y1 K) at the witness.
inline WitnessResult zero_set(const Mat6& r, const Options& opts = {})
{
    WitnessResult w = witness(r, opts);
    if (w.alpha1 < -opts.positivity_tolerance) {
        throw std::invalid_argument("operator is not sectionally nonnegative (max alpha1 < 0); Z(R) is undefined");
    }
    return w;
}

} // namespace sectional::strongpos
