#pragma once

#include "sectional/unipoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sectional {

/// Sparse bivariate polynomial sum a_mn x^m y^n; only nonzero a_mn are stored.
class BiPoly {
public:
    using Exponents = std::pair<int, int>;

    BiPoly() = default;

    Rational coefficient(int m, int n) const
    {
        auto it = terms_.find({m, n});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(int m, int n, const Rational& value)
    {
        if (m < 0 || n < 0) throw std::invalid_argument("negative exponent in bivariate polynomial");
        if (value == 0) {
            terms_.erase({m, n});
        } else {
            terms_[{m, n}] = value;
        }
    }

    void add(int m, int n, const Rational& value) { set(m, n, coefficient(m, n) + value); }

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
        return d;
    }
    int degree_x() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.first);
        return d;
    }
    int degree_y() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.second);
        return d;
    }

    Rational operator()(const Rational& x, const Rational& y) const
    {
        return eval_x(x)(y);
    }

    /// p(x0, y) as a polynomial in y.
    UniPoly eval_x(const Rational& x0) const
    {
        std::vector<Rational> c(static_cast<std::size_t>(std::max(degree_y(), -1) + 1), Rational(0));
        std::vector<Rational> powers{Rational(1)};
        for (const auto& [e, v] : terms_) {
            while (static_cast<int>(powers.size()) <= e.first) powers.push_back(powers.back() * x0);
            c[static_cast<std::size_t>(e.second)] += v * powers[static_cast<std::size_t>(e.first)];
        }
        return UniPoly(std::move(c), Var::y);
    }

    /// p(x, y0) as a polynomial in x.
    UniPoly eval_y(const Rational& y0) const
    {
        UniPoly r = transposed().eval_x(y0);
        r.set_var(Var::x);
        return r;
    }

    BiPoly transposed() const
    {
        BiPoly t;
        for (const auto& [e, v] : terms_) t.terms_[{e.second, e.first}] = v;
        return t;
    }

    BiPoly homogeneous_part(int k) const
    {
        if (k < 0) throw std::invalid_argument("homogeneous part of negative degree");
        BiPoly h;
        for (const auto& [e, v] : terms_) {
            if (e.first + e.second == k) h.terms_[e] = v;
        }
        return h;
    }

    /// Coefficients of P(x, 1) for this (homogeneous) polynomial of degree k,
    /// ordered a_{k,0}, a_{k-1,1}, ..., a_{0,k}.
    std::vector<Rational> dehomogenized_coefficients(int k) const
    {
        std::vector<Rational> out;
        for (int m = k; m >= 0; --m) out.push_back(coefficient(m, k - m));
        return out;
    }

    BiPoly derivative_x() const
    {
        BiPoly d;
        for (const auto& [e, v] : terms_) {
            if (e.first > 0) d.terms_[{e.first - 1, e.second}] = v * e.first;
        }
        return d;
    }

    BiPoly derivative_y() const
    {
        BiPoly d;
        for (const auto& [e, v] : terms_) {
            if (e.second > 0) d.terms_[{e.first, e.second - 1}] = v * e.second;
        }
        return d;
    }

    /// p(x + x0, y + y0), expanded exactly.
    BiPoly translated(const Rational& x0, const Rational& y0) const
    {
        const int dx = degree_x();
        const int dy = degree_y();
        if (dx < 0) return {};
        // Binomial rows C(n, k) * t^(n-k), built once per shift.
        auto shift_table = [](int degree, const Rational& t) {
            std::vector<std::vector<Rational>> table(static_cast<std::size_t>(degree) + 1);
            for (int n = 0; n <= degree; ++n) {
                auto& row = table[static_cast<std::size_t>(n)];
                row.assign(static_cast<std::size_t>(n) + 1, Rational(0));
                Rational power(1);
                Integer binom(1);
                for (int k = n; k >= 0; --k) {
                    // coefficient of s^k in (s + t)^n is C(n, k) t^(n-k)
                    row[static_cast<std::size_t>(k)] = Rational(binom) * power;
                    power *= t;
                    binom = binom * k / (n - k + 1);
                }
            }
            return table;
        };
        const auto tx = shift_table(dx, x0);
        const auto ty = shift_table(dy, y0);
        std::map<Exponents, Rational> acc;
        for (const auto& [e, v] : terms_) {
            const auto& rx = tx[static_cast<std::size_t>(e.first)];
            const auto& ry = ty[static_cast<std::size_t>(e.second)];
            for (int i = 0; i <= e.first; ++i) {
                if (rx[static_cast<std::size_t>(i)] == 0) continue;
                Rational vi = v * rx[static_cast<std::size_t>(i)];
                for (int j = 0; j <= e.second; ++j) {
                    if (ry[static_cast<std::size_t>(j)] == 0) continue;
                    acc[{i, j}] += vi * ry[static_cast<std::size_t>(j)];
                }
            }
        }
        BiPoly out;
        for (auto& [e, v] : acc) {
            if (v != 0) out.terms_[e] = std::move(v);
        }
        return out;
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

private:
    std::map<Exponents, Rational> terms_;
};

inline UniPoly bipoly_eval_x(const BiPoly& p, const Rational& x0) { return p.eval_x(x0); }

inline BiPoly homogeneous_part(const BiPoly& p, int k) { return p.homogeneous_part(k); }

} // namespace sectional
