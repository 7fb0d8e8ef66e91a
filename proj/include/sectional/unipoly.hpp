#pragma once

#include "sectional/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sectional {

enum class Var : char { x = 'x', y = 'y' };

/// Dense univariate polynomial over the rationals. Coefficient k multiplies
/// the k-th power; the stored list never ends in a zero, so the zero
/// polynomial is the empty list and has degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs, Var var = Var::x) : c_(std::move(coeffs)), var_(var) { trim(); }

    static UniPoly constant(const Rational& c, Var var = Var::x) { return UniPoly({c}, var); }

    static UniPoly monomial(const Rational& c, int power, Var var = Var::x)
    {
        if (power < 0) throw std::invalid_argument("negative monomial power");
        std::vector<Rational> coeffs(static_cast<std::size_t>(power) + 1, Rational(0));
        coeffs.back() = c;
        return UniPoly(std::move(coeffs), var);
    }

    static UniPoly from_ints(std::initializer_list<long> coeffs, Var var = Var::x)
    {
        std::vector<Rational> c;
        c.reserve(coeffs.size());
        for (long v : coeffs) c.emplace_back(v);
        return UniPoly(std::move(c), var);
    }

    /// Monic polynomial with the given roots, repeated entries giving multiplicity.
    static UniPoly from_roots(std::span<const Rational> roots, Var var = Var::x)
    {
        UniPoly p = constant(Rational(1), var);
        for (const auto& r : roots) p *= UniPoly({-r, Rational(1)}, var);
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Var var() const { return var_; }
    void set_var(Var v) { var_ = v; }
    const std::vector<Rational>& coefficients() const { return c_; }

    Rational coefficient(int k) const
    {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<std::size_t>(k)];
    }

    const Rational& leading() const
    {
        if (c_.empty()) throw std::invalid_argument("leading coefficient of the zero polynomial");
        return c_.back();
    }

    Rational operator()(const Rational& t) const
    {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= t;
            acc += *it;
        }
        return acc;
    }

    double eval(double t) const
    {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
        return acc;
    }

    int sign_at(const Rational& t) const { return sgn((*this)(t)); }

    UniPoly derivative() const
    {
        if (c_.size() <= 1) return UniPoly({}, var_);
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
        return UniPoly(std::move(d), var_);
    }

    UniPoly monic() const
    {
        if (is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
        UniPoly r = *this;
        const Rational lc = leading();
        for (auto& c : r.c_) c /= lc;
        return r;
    }

    UniPoly operator-() const
    {
        UniPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }

    UniPoly& operator-=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }

    UniPoly& operator*=(const Rational& s)
    {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        return *this;
    }

    UniPoly& operator*=(const UniPoly& o)
    {
        if (is_zero() || o.is_zero()) {
            c_.clear();
            return *this;
        }
        std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        c_ = std::move(r);
        trim();
        return *this;
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }

    // Equality ignores the variable tag.
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
    Var var_ = Var::x;
};

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b)
{
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) return {UniPoly({}, a.var()), a};
    std::vector<Rational> quot(static_cast<std::size_t>(da - db + 1), Rational(0));
    const Rational& lc = b.leading();
    const auto& bc = b.coefficients();
    for (int k = da; k >= db; --k) {
        const auto kk = static_cast<std::size_t>(k);
        if (rem[kk] == 0) continue;
        Rational f = rem[kk] / lc;
        const auto shift = static_cast<std::size_t>(k - db);
        for (std::size_t j = 0; j < bc.size(); ++j) rem[shift + j] -= f * bc[j];
        quot[shift] = std::move(f);
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UniPoly(std::move(quot), a.var()), UniPoly(std::move(rem), a.var())};
}

inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

/// Monic greatest common divisor.
inline UniPoly poly_gcd(UniPoly a, UniPoly b)
{
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of zero polynomials undefined");
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        // Rescaling keeps the remainder sequence from growing needlessly.
        b = r.is_zero() ? std::move(r) : r.monic();
    }
    return a.monic();
}

inline UniPoly squarefree_part(const UniPoly& a)
{
    if (a.is_zero()) throw std::invalid_argument("square-free part of the zero polynomial");
    if (a.degree() == 0) return UniPoly::constant(Rational(1), a.var());
    const UniPoly g = poly_gcd(a, a.derivative());
    return divmod(a, g).first.monic();
}

inline bool is_squarefree(const UniPoly& a)
{
    return !a.is_zero() && (a.degree() == 0 || poly_gcd(a, a.derivative()).degree() == 0);
}

/// Newton divided-difference interpolation through (xs[i], ys[i]).
inline UniPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys, Var var = Var::x)
{
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolation needs matching node and value counts");
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            const Rational span = xs[i] - xs[i - level];
            if (span == 0) throw std::invalid_argument("interpolation nodes must be distinct");
            dd[i] = (dd[i] - dd[i - 1]) / span;
        }
    }
    // Horner-style expansion of the Newton form.
    UniPoly p({}, var);
    for (std::size_t i = n; i-- > 0;) {
        p *= UniPoly({-xs[i], Rational(1)}, var);
        p += UniPoly::constant(dd[i], var);
    }
    return p;
}

inline std::string to_string(const UniPoly& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    const char v = static_cast<char>(p.var());
    for (int k = p.degree(); k >= 0; --k) {
        const Rational c = p.coefficient(k);
        if (c == 0) continue;
        std::string term = c.get_str();
        if (k >= 1) term += std::string("*") + v;
        if (k >= 2) term += "^" + std::to_string(k);
        if (!out.empty()) out += (c > 0 ? " + " : " ");
        out += term;
    }
    return out;
}

} // namespace sectional
