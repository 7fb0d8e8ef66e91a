#pragma once

#include "sectional/matrix.hpp"
#include "sectional/unipoly.hpp"

#include <stdexcept>

namespace sectional {

namespace detail {

// Rows x^{nb-1} a, ..., a, x^{na-1} b, ..., b with columns indexed by
// descending powers; truncated to the leading (na+nb) columns. With
// nb = deg b - j and na = deg a - j this is the j-th subresultant block.
inline RatMatrix shifted_coefficient_block(const UniPoly& a, const UniPoly& b, int j)
{
    const int da = a.degree();
    const int db = b.degree();
    const int rows_a = db - j;
    const int rows_b = da - j;
    const int n = rows_a + rows_b;
    const int top = da + db - j - 1; // power carried by column 0
    RatMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    auto fill = [&](const UniPoly& p, int row, int shift) {
        for (int col = 0; col < n; ++col) {
            const int power = top - col - shift;
            if (power >= 0 && power <= p.degree()) {
                m(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) = p.coefficient(power);
            }
        }
    };
    for (int r = 0; r < rows_a; ++r) fill(a, r, rows_a - 1 - r);
    for (int r = 0; r < rows_b; ++r) fill(b, rows_a + r, rows_b - 1 - r);
    return m;
}

inline void require_nonconstant(const UniPoly& a, const UniPoly& b)
{
    if (a.degree() < 1 || b.degree() < 1) {
        throw std::invalid_argument("Sylvester matrix needs polynomials of degree >= 1");
    }
}

} // namespace detail

/// (deg a + deg b)-square Sylvester matrix: deg b rows of a's coefficients
/// followed by deg a rows of b's, leading coefficients first.
inline RatMatrix sylvester_matrix(const UniPoly& a, const UniPoly& b)
{
    detail::require_nonconstant(a, b);
    return detail::shifted_coefficient_block(a, b, 0);
}

/// res(a, b) = lc(a)^deg b * lc(b)^deg a * prod (alpha_i - beta_j).
inline Rational resultant(const UniPoly& a, const UniPoly& b)
{
    return determinant(sylvester_matrix(a, b));
}

/// j-th principal subresultant coefficient of (a, b); psc_0 is the resultant.
inline Rational principal_subresultant(const UniPoly& a, const UniPoly& b, int j)
{
    detail::require_nonconstant(a, b);
    if (j < 0 || j >= std::min(a.degree(), b.degree())) {
        throw std::invalid_argument("subresultant index out of range");
    }
    return determinant(detail::shifted_coefficient_block(a, b, j));
}

/// disc(a) = (-1)^{d(d-1)/2} res(a, a') / lc(a); b^2 - 4c for y^2 + b y + c
/// and -4p^3 - 27q^2 for y^3 + p y + q.
inline Rational discriminant(const UniPoly& a)
{
    const int d = a.degree();
    if (d < 2) throw std::invalid_argument("discriminant needs degree >= 2");
    Rational r = resultant(a, a.derivative()) / a.leading();
    return ((d * (d - 1) / 2) % 2 == 0) ? r : Rational(-r);
}

/// First subdiscriminant (-1)^{(d-1)(d-2)/2} psc_1(a, a') / lc(a). Together
/// with a vanishing discriminant, it is zero iff gcd(a, a') has degree >= 2.
inline Rational subdiscriminant_first(const UniPoly& a)
{
    const int d = a.degree();
    if (d < 3) throw std::invalid_argument("first subdiscriminant needs degree >= 3");
    Rational r = principal_subresultant(a, a.derivative(), 1) / a.leading();
    return (((d - 1) * (d - 2) / 2) % 2 == 0) ? r : Rational(-r);
}

} // namespace sectional
