#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "robustbeliefs/common.hpp"

namespace robustbeliefs {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational from an IEEE double (mantissa * 2^exp).
inline Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw DomainError("exact_rational: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double m = std::frexp(x, &exp);           // x = m * 2^exp, |m| in [0.5,1)
    const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));  // exact
    exp -= 53;
    Rational r(mant);
    boost::multiprecision::cpp_int two(2);
    if (exp >= 0) {
        r *= Rational(boost::multiprecision::pow(two, exp));
    } else {
        r /= Rational(boost::multiprecision::pow(two, -exp));
    }
    return r;
}

namespace detail {

using Poly = std::vector<Rational>;  // descending powers, no leading zeros

inline Poly normalize(Poly p) {
    std::size_t i = 0;
    while (i < p.size() && p[i] == 0) ++i;
    return Poly(p.begin() + i, p.end());
}

inline Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    const auto deg = static_cast<long>(p.size()) - 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) d[i] = p[i] * Rational(deg - static_cast<long>(i));
    return normalize(d);
}

inline Poly remainder(Poly a, const Poly& b) {
    a = normalize(a);
    while (!a.empty() && a.size() >= b.size()) {
        const Rational f = a[0] / b[0];
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= f * b[i];
        a = normalize(Poly(a.begin() + 1, a.end()));
    }
    return a;
}

inline Rational eval(const Poly& p, const Rational& x) {
    Rational v(0);
    for (const auto& c : p) v = v * x + c;
    return v;
}

inline int sign_changes(const std::vector<Poly>& chain, const Rational& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain) {
        const Rational v = eval(p, x);
        const int s = (v > 0) ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace detail

/// Number of distinct real roots in (lo, hi] by Sturm's theorem, with exact
/// rational arithmetic. `coeffs` lists descending powers. Throws NotSquareFree
/// when gcd(P, P') is non-constant.
inline int sturm_root_count(const std::vector<double>& coeffs, double lo, double hi) {
    if (lo >= hi) throw RangeError("sturm_root_count: need lo < hi");
    detail::Poly p;
    p.reserve(coeffs.size());
    for (double c : coeffs) p.push_back(exact_rational(c));
    p = detail::normalize(p);
    if (p.size() <= 1) return 0;

    // square-free check: gcd(P, P') must be constant
    {
        detail::Poly a = p, b = detail::derivative(p);
        while (!b.empty()) {
            detail::Poly r = detail::remainder(a, b);
            a = b;
            b = r;
        }
        if (a.size() > 1) throw NotSquareFree("sturm_root_count: polynomial has repeated roots");
    }

    std::vector<detail::Poly> chain{p, detail::derivative(p)};
    while (chain.back().size() > 1) {
        detail::Poly r = detail::remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }

    const Rational a = exact_rational(lo), b = exact_rational(hi);
    return detail::sign_changes(chain, a) - detail::sign_changes(chain, b);
}

}  // namespace robustbeliefs
