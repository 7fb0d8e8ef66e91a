#pragma once

#include "sectional/unipoly.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectional {

/// Signed remainder sequence a, a', -rem(a, a'), ... of a square-free polynomial.
/// Each entry is rescaled by a positive constant, which leaves every sign
/// variation count unchanged.
struct SturmChain {
    std::vector<UniPoly> polys;
};

inline SturmChain sturm_chain(const UniPoly& a)
{
    if (a.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
    if (!is_squarefree(a)) {
        throw std::invalid_argument("Sturm chain needs a square-free polynomial; call squarefree_part first");
    }
    auto normalized = [](UniPoly p) {
        Rational lc = abs(p.leading());
        return p * Rational(1 / lc);
    };
    SturmChain chain;
    chain.polys.push_back(normalized(a));
    if (a.degree() == 0) return chain;
    chain.polys.push_back(normalized(a.derivative()));
    while (true) {
        const auto n = chain.polys.size();
        UniPoly r = chain.polys[n - 2] % chain.polys[n - 1];
        if (r.is_zero()) break;
        chain.polys.push_back(normalized(-r));
    }
    return chain;
}

inline int sign_variations(const SturmChain& chain, const Rational& t)
{
    int variations = 0;
    int previous = 0;
    for (const auto& p : chain.polys) {
        const int s = p.sign_at(t);
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++variations;
        previous = s;
    }
    return variations;
}

/// Variations at +infinity (positive = true) or -infinity, read off the
/// leading coefficients and degree parities.
inline int sign_variations_at_infinity(const SturmChain& chain, bool positive)
{
    int variations = 0;
    int previous = 0;
    for (const auto& p : chain.polys) {
        int s = sgn(p.leading());
        if (!positive && p.degree() % 2 == 1) s = -s;
        if (previous != 0 && s != previous) ++variations;
        previous = s;
    }
    return variations;
}

namespace detail {

inline int variations_at(const SturmChain& chain, const std::optional<Rational>& t, bool upper)
{
    return t ? sign_variations(chain, *t) : sign_variations_at_infinity(chain, upper);
}

} // namespace detail

/// Number of distinct real roots in (lo, hi]. An empty optional stands for
/// -infinity as the lower bound and +infinity as the upper bound.
inline int count_real_roots(const UniPoly& a, const std::optional<Rational>& lo, const std::optional<Rational>& hi)
{
    if (a.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    if (lo && hi && !(*lo < *hi)) throw std::invalid_argument("root count needs lo < hi");
    const SturmChain chain = sturm_chain(squarefree_part(a));
    return detail::variations_at(chain, lo, false) - detail::variations_at(chain, hi, true);
}

enum class SignClass { negative, zero, positive };

inline std::string to_string(SignClass s)
{
    switch (s) {
    case SignClass::negative: return "negative";
    case SignClass::zero: return "zero";
    case SignClass::positive: return "positive";
    }
    return "unknown";
}

inline SignClass parse_sign_class(const std::string& s)
{
    if (s == "negative") return SignClass::negative;
    if (s == "zero") return SignClass::zero;
    if (s == "positive") return SignClass::positive;
    throw std::invalid_argument("unknown sign class '" + s + "'");
}

/// Closed rational interval holding exactly one real root of the square-free
/// part of the polynomial it was isolated from.
struct RootInterval {
    Rational lower;
    Rational upper;
    int multiplicity_in_squarefree_part = 1;
    SignClass sign_class = SignClass::positive;

    bool pinned() const { return lower == upper; }
    Rational midpoint() const { return (lower + upper) / 2; }
    Rational width() const { return upper - lower; }
    double approx() const { return midpoint().get_d(); }
    bool contains(const Rational& t) const { return lower <= t && t <= upper; }

    friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

/// Default isolation width 2^-32.
inline Rational default_isolation_tolerance() { return pow2(-32); }

/// Strict bound 1 + max |a_k / a_d| on the moduli of all complex roots.
inline Rational cauchy_bound(const UniPoly& a)
{
    if (a.degree() < 1) return Rational(1);
    Rational m(0);
    const Rational& lc = a.leading();
    for (int k = 0; k < a.degree(); ++k) m = std::max(m, Rational(abs(a.coefficient(k) / lc)));
    return m + 1;
}

namespace detail {

// Rational with the smallest denominator in [a, b], by continued fractions.
inline Rational simplest_rational(const Rational& a, const Rational& b)
{
    Integer fa;
    mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    if (Rational(fa) == a) return a;
    Integer fb;
    mpz_fdiv_q(fb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    if (fa < fb) return Rational(fa + 1);
    const Rational inner = simplest_rational(1 / (b - fa), 1 / (a - fa));
    return Rational(fa) + 1 / inner;
}

// Bisection on a sign change of a square-free polynomial; (lo, hi) holds one
// root and the endpoints are not roots. Each step also tries the simplest
// rational in the bracket, so roots with small denominators end up pinned.
inline RootInterval refine_bracket(const UniPoly& sqf, Rational lo, Rational hi, const Rational& tol)
{
    int slo = sqf.sign_at(lo);
    while (hi - lo >= tol) {
        const Rational simple = simplest_rational(lo, hi);
        if (sqf.sign_at(simple) == 0) return {simple, simple, 1, SignClass::positive};
        Rational mid = (lo + hi) / 2;
        const int s = sqf.sign_at(mid);
        if (s == 0) return {mid, mid, 1, SignClass::positive};
        if (s == slo) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
    return {lo, hi, 1, SignClass::positive};
}

// A split point strictly inside (lo, hi) where sqf does not vanish.
inline Rational non_root_split(const UniPoly& sqf, const Rational& lo, const Rational& hi)
{
    Rational mid = (lo + hi) / 2;
    if (sqf.sign_at(mid) != 0) return mid;
    // sqf has finitely many roots; walk dyadic offsets until one misses them.
    Rational step = (hi - lo) / 4;
    for (int k = 0; k < 4 * (sqf.degree() + 2); ++k) {
        for (Rational cand : {Rational(mid + step), Rational(mid - step)}) {
            if (sqf.sign_at(cand) != 0) return cand;
        }
        step /= 2;
    }
    throw std::logic_error("no split point found inside isolating interval");
}

inline void isolate_open(const UniPoly& sqf, const SturmChain& chain, const Rational& lo, const Rational& hi, int count,
                         const Rational& tol, std::vector<RootInterval>& out)
{
    if (count <= 0) return;
    if (count == 1) {
        out.push_back(refine_bracket(sqf, lo, hi, tol));
        return;
    }
    const Rational mid = non_root_split(sqf, lo, hi);
    const int left = sign_variations(chain, lo) - sign_variations(chain, mid);
    isolate_open(sqf, chain, lo, mid, left, tol, out);
    isolate_open(sqf, chain, mid, hi, count - left, tol, out);
}

} // namespace detail

/// Disjoint isolating intervals for every distinct real root, sorted
/// ascending. Each interval is narrower than tol or pins a rational root
/// exactly; the sign class of every root is decided exactly.
inline std::vector<RootInterval> isolate_real_roots(const UniPoly& a, const Rational& tol = default_isolation_tolerance())
{
    if (a.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
    if (tol <= 0) throw std::invalid_argument("isolation tolerance must be positive");
    std::vector<RootInterval> out;
    UniPoly sqf = squarefree_part(a);
    if (sqf.degree() < 1) return out;

    const bool zero_root = sqf.coefficient(0) == 0;
    if (zero_root) {
        // Deflate the simple root at 0 so both half-lines have nonzero endpoints.
        sqf = divmod(sqf, UniPoly({Rational(0), Rational(1)}, sqf.var())).first;
    }
    std::vector<RootInterval> negatives;
    std::vector<RootInterval> positives;
    if (sqf.degree() >= 1) {
        const SturmChain chain = sturm_chain(sqf);
        const Rational bound = cauchy_bound(sqf);
        const Rational zero(0);
        const int neg = sign_variations(chain, -bound) - sign_variations(chain, zero);
        const int pos = sign_variations(chain, zero) - sign_variations(chain, bound);
        detail::isolate_open(sqf, chain, -bound, zero, neg, tol, negatives);
        detail::isolate_open(sqf, chain, zero, bound, pos, tol, positives);
    }
    // An interval may still touch 0 after refinement; move the endpoint off
    // it so the closed interval excludes the deflated root and any sign doubt.
    for (auto& iv : negatives) {
        while (iv.upper == 0) iv = detail::refine_bracket(sqf, iv.lower, iv.upper, iv.width() / 2);
        iv.sign_class = SignClass::negative;
        out.push_back(iv);
    }
    if (zero_root) out.push_back({Rational(0), Rational(0), 1, SignClass::zero});
    for (auto& iv : positives) {
        while (iv.lower == 0) iv = detail::refine_bracket(sqf, iv.lower, iv.upper, iv.width() / 2);
        iv.sign_class = SignClass::positive;
        out.push_back(iv);
    }
    return out;
}

/// Narrows an isolating interval of a square-free polynomial to width < tol.
inline RootInterval refine_root(const UniPoly& sqf, const RootInterval& iv, const Rational& tol)
{
    if (iv.pinned() || iv.width() < tol) return iv;
    RootInterval lo_hi = iv;
    if (sqf.sign_at(lo_hi.lower) == 0 || sqf.sign_at(lo_hi.upper) == 0) {
        throw std::invalid_argument("refine_root needs an interval with non-root endpoints");
    }
    RootInterval r = detail::refine_bracket(sqf, iv.lower, iv.upper, tol);
    r.sign_class = iv.sign_class;
    return r;
}

} // namespace sectional
