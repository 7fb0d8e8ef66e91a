#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sectional {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign(const Rational& r) { return sgn(r); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact binary value of a finite double.
inline Rational from_double(double d)
{
    if (!std::isfinite(d)) {
        throw std::invalid_argument("cannot convert non-finite double to a rational");
    }
    Rational r;
    mpq_set_d(r.get_mpq_t(), d);
    return r;
}

inline Rational pow2(int e)
{
    Rational r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

/// Canonical "numerator/denominator" form; integers keep the "/1".
inline std::string to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "n" or "n/d" with an optional leading sign on n; d must be positive.
inline Rational parse_rational(std::string_view text)
{
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    auto unsigned_part = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        return s;
    };
    if (!digits(unsigned_part(num)) || !digits(unsigned_part(den))) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    Integer d(std::string(unsigned_part(den)), 10);
    if (den.front() == '-') d = -d;
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    std::string n(num);
    if (!n.empty() && n.front() == '+') n.erase(0, 1);
    Rational r(Integer(n, 10), d);
    r.canonicalize();
    return r;
}

} // namespace sectional
