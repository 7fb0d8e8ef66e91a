#pragma once

#include "sectional/matrix.hpp"
#include "sectional/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sectional {

using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Basis of 2-forms on R^4, lexicographic: e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4.
// The six basis forms are orthonormal and e1^e2^e3^e4 is positively oriented.
inline constexpr std::array<std::pair<int, int>, 6> kBasisPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr const char* kBasisTag = "e12,e13,e14,e23,e24,e34";

template <typename T>
using TwoForm = std::array<T, 6>;

template <typename T>
using Vector4 = std::array<T, 4>;

/// Symmetric operator on the 2-forms of R^4, stored over the fixed basis.
/// Symmetry is checked by validate_operator, not at construction.
class CurvatureOperator {
public:
    CurvatureOperator() : m_(6, 6) {}
    explicit CurvatureOperator(RatMatrix m) : m_(std::move(m))
    {
        if (m_.rows() != 6 || m_.cols() != 6) throw std::invalid_argument("curvature operator must be 6x6");
    }

    const RatMatrix& matrix() const { return m_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    Mat6 to_eigen() const
    {
        Mat6 r;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) r(i, j) = m_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
        return r;
    }

    friend bool operator==(const CurvatureOperator& a, const CurvatureOperator& b) { return a.m_ == b.m_; }

private:
    RatMatrix m_;
};

/// K: the 4-volume form acting on 2-forms. vKv = 2 (v12 v34 - v13 v24 + v14 v23).
inline RatMatrix volume_form()
{
    RatMatrix k(6, 6);
    k(0, 5) = k(5, 0) = 1;
    k(1, 4) = k(4, 1) = -1;
    k(2, 3) = k(3, 2) = 1;
    return k;
}

inline Mat6 volume_form_eigen()
{
    Mat6 k = Mat6::Zero();
    k(0, 5) = k(5, 0) = 1.0;
    k(1, 4) = k(4, 1) = -1.0;
    k(2, 3) = k(3, 2) = 1.0;
    return k;
}

/// vKv; zero exactly for decomposable forms.
template <typename T>
T wedge_self(const TwoForm<T>& v)
{
    return T(2) * (v[0] * v[5] - v[1] * v[4] + v[2] * v[3]);
}

inline double wedge_self(const Vec6& v) { return 2.0 * (v(0) * v(5) - v(1) * v(4) + v(2) * v(3)); }

/// u ^ w in the fixed basis.
template <typename T>
TwoForm<T> plucker(const Vector4<T>& u, const Vector4<T>& w)
{
    TwoForm<T> v;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [i, j] = kBasisPairs[k];
        v[k] = u[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] -
               u[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(i)];
    }
    return v;
}

inline Vec6 plucker(const Vec4& u, const Vec4& w)
{
    Vec6 v;
    for (int k = 0; k < 6; ++k) {
        const auto [i, j] = kBasisPairs[static_cast<std::size_t>(k)];
        v(k) = u(i) * w(j) - u(j) * w(i);
    }
    return v;
}

/// vRv. Sectional curvature of the plane v when v is unit and decomposable.
inline Rational sectional_value(const CurvatureOperator& r, const TwoForm<Rational>& v)
{
    Rational acc(0);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) acc += v[i] * r(i, j) * v[j];
    return acc;
}

inline double sectional_value(const Mat6& r, const Vec6& v) { return v.dot(r * v); }

/// The 4x4 skew matrix W with W(i, j) = v_ij, so that u ^ w maps to u w^T - w u^T.
inline Mat4 skew_matrix(const Vec6& v)
{
    Mat4 s = Mat4::Zero();
    for (int k = 0; k < 6; ++k) {
        const auto [i, j] = kBasisPairs[static_cast<std::size_t>(k)];
        s(i, j) = v(k);
        s(j, i) = -v(k);
    }
    return s;
}

/// Orthonormal pair spanning a plane; plucker(u, w) is the unit oriented 2-form.
struct Plane {
    Vec4 u = Vec4::Zero();
    Vec4 w = Vec4::Zero();
};

/// Splits a (numerically) decomposable 2-form into an orthonormal basis of its
/// plane, oriented so that plucker(u, w) is a positive multiple of v.
inline Plane split_plane(const Vec6& v)
{
    if (v.norm() == 0.0) throw std::invalid_argument("cannot split the zero 2-form into a plane");
    Eigen::JacobiSVD<Mat4> svd(skew_matrix(v), Eigen::ComputeFullU);
    Plane p;
    p.u = svd.matrixU().col(0);
    p.w = svd.matrixU().col(1);
    // The span is right; fix orientation and rotate w into the plane's complement of u.
    p.w -= p.w.dot(p.u) * p.u;
    p.w.normalize();
    if (plucker(p.u, p.w).dot(v) < 0) p.w = -p.w;
    return p;
}

/// Unit decomposable 2-forms inside span(kernel). The null cone of K on that
/// span is generated by e_p / sqrt(mu_p) +- e_n / sqrt(-mu_n) over pairs of
/// positive and negative eigen-directions of the restricted K, together with
/// its null eigen-directions.
inline std::vector<Vec6> decomposable_directions(const std::vector<Vec6>& kernel, double tol)
{
    std::vector<Vec6> out;
    if (kernel.empty()) return out;
    const auto m = static_cast<Eigen::Index>(kernel.size());
    Eigen::MatrixXd basis(6, m);
    for (Eigen::Index i = 0; i < m; ++i) basis.col(i) = kernel[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd restricted = basis.transpose() * volume_form_eigen() * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cone(restricted);

    std::vector<Vec6> generators;
    std::vector<Eigen::Index> positive;
    std::vector<Eigen::Index> negative;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double mu = cone.eigenvalues()(i);
        if (std::abs(mu) < tol) {
            generators.push_back(basis * cone.eigenvectors().col(i));
        } else if (mu > 0) {
            positive.push_back(i);
        } else {
            negative.push_back(i);
        }
    }
    for (auto p : positive) {
        const Vec6 a = basis * cone.eigenvectors().col(p) / std::sqrt(cone.eigenvalues()(p));
        for (auto n : negative) {
            const Vec6 b = basis * cone.eigenvectors().col(n) / std::sqrt(-cone.eigenvalues()(n));
            generators.push_back(a + b);
            generators.push_back(a - b);
        }
    }
    for (Vec6 g : generators) {
        g.normalize();
        if (std::abs(wedge_self(g)) < tol) out.push_back(g);
    }
    return out;
}

struct ValidationReport {
    bool symmetric = true;
    Rational bianchi_trace;  // trace(R K); zero for operators satisfying the first Bianchi identity
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

inline ValidationReport validate_operator(const CurvatureOperator& r)
{
    ValidationReport report;
    report.symmetric = r.matrix().is_symmetric();
    if (!report.symmetric) {
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j)
                if (r(i, j) != r(j, i)) {
                    report.errors.push_back("operator is not symmetric: entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") differs from its transpose");
                    i = j = 6;
                }
    }
    report.bianchi_trace = (r.matrix() * volume_form()).trace();
    if (report.bianchi_trace != 0) {
        report.warnings.push_back("trace(R K) = " + to_string(report.bianchi_trace) +
                                  " is nonzero; the operator does not satisfy the Bianchi identity");
    }
    return report;
}

inline CurvatureOperator constant_curvature(const Rational& c) { return CurvatureOperator(RatMatrix::identity(6) * c); }

inline CurvatureOperator diagonal(std::span<const Rational> d)
{
    if (d.size() != 6) throw std::invalid_argument("diagonal operator needs six entries");
    RatMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i) m(i, i) = d[i];
    return CurvatureOperator(std::move(m));
}

inline CurvatureOperator diagonal(std::initializer_list<long> d)
{
    std::vector<Rational> v;
    for (long x : d) v.emplace_back(x);
    return diagonal(std::span<const Rational>(v));
}

/// Curvature of S^2 x S^2 with unit factors: e1^e2 and e3^e4 are the factor planes.
inline CurvatureOperator product_spheres() { return diagonal({1, 0, 0, 0, 0, 1}); }

/// Integer entries drawn uniformly from [-bound, bound] for the upper triangle
/// and mirrored. The mt19937_64 sequence is fixed by the standard, and the
/// draw avoids implementation-defined distributions, so output is portable.
inline CurvatureOperator random_symmetric(std::uint64_t seed, long bound)
{
    if (bound < 0) throw std::invalid_argument("entry bound must be nonnegative");
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    RatMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) {
            const long v = static_cast<long>(rng() % span) - bound;
            m(i, j) = m(j, i) = v;
        }
    return CurvatureOperator(std::move(m));
}

/// R - x I - y K.
inline CurvatureOperator shifted(const CurvatureOperator& r, const Rational& x, const Rational& y)
{
    RatMatrix m = r.matrix() - RatMatrix::identity(6) * x - volume_form() * y;
    return CurvatureOperator(std::move(m));
}

} // namespace sectional
