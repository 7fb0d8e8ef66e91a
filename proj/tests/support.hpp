#pragma once

// Independent reference computations used only by the tests.

#include "sectional/sectional.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace testing_support {

using namespace sectional;

/// n/d reduced; the two-argument gmp constructor leaves the fraction as given.
inline Rational frac(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Determinant by the Leibniz permutation sum; fine up to 7x7.
inline Rational leibniz_det(const RatMatrix& m)
{
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total(0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Rational term(inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// det(xI - A) by the Faddeev-LeVerrier trace recursion, ascending coefficients.
inline UniPoly leverrier(const RatMatrix& a)
{
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RatMatrix m(n, n);  // M_0 = 0
    const RatMatrix id = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + id * c[n - k + 1];
        c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
    }
    return UniPoly(std::move(c), Var::x);
}

inline BiPoly bipoly_product(const BiPoly& a, const BiPoly& b)
{
    BiPoly out;
    for (const auto& [ea, va] : a.terms())
        for (const auto& [eb, vb] : b.terms()) out.add(ea.first + eb.first, ea.second + eb.second, va * vb);
    return out;
}

/// (a - x)(b - x) - y^2
inline BiPoly paired_block(long a, long b)
{
    BiPoly p;
    p.set(0, 0, Rational(a * b));
    p.add(1, 0, Rational(-(a + b)));
    p.add(2, 0, Rational(1));
    p.add(0, 2, Rational(-1));
    return p;
}

inline UniPoly random_int_poly(std::mt19937_64& rng, int max_degree, long bound)
{
    const int degree = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
    std::vector<Rational> c;
    for (int k = 0; k <= degree; ++k) c.emplace_back(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound);
    if (c.back() == 0) c.back() = 1;
    return UniPoly(std::move(c), Var::x);
}

inline std::vector<double> as_doubles(const UniPoly& p)
{
    std::vector<double> out;
    for (const auto& c : p.coefficients()) out.push_back(c.get_d());
    return out;
}

/// Plane spanned by (u, w) contains the coordinate plane e_i ^ e_j (0-based).
inline bool spans_coordinate_plane(const Plane& p, int i, int j, double tol = 1e-9)
{
    const Vec6 v = plucker(p.u, p.w);
    int k = -1;
    for (int t = 0; t < 6; ++t)
        if (kBasisPairs[static_cast<std::size_t>(t)] == std::pair<int, int>{i, j}) k = t;
    return std::abs(std::abs(v(k)) - 1.0) < tol;
}

} // namespace testing_support
