// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

// Test-only exact univariate rational-function arithmetic. Used as an
// independent oracle: the symmetry expressions are evaluated with this scalar
// to obtain their literal numerator/denominator polynomials in q, reduced via
// a primitive polynomial remainder sequence.

#pragma once

#include "qeuler/rational.hpp"

#include <stdexcept>
#include <vector>

namespace polyfun {

using qeuler::BigInt;
using qeuler::Rational;

struct Poly {
    std::vector<Rational> c;  // ascending, no trailing zeros

    static Poly zero() { return {}; }
    static Poly constant(const Rational& v) {
        Poly p;
        if (!v.is_zero()) p.c = {v};
        return p;
    }
    static Poly monomial(std::size_t deg) {
        Poly p;
        p.c.assign(deg + 1, Rational(0));
        p.c.back() = Rational(1);
        return p;
    }

    bool is_zero() const { return c.empty(); }
    long long degree() const { return static_cast<long long>(c.size()) - 1; }  // -1 for zero
    const Rational& lead() const { return c.back(); }

    void strip() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

inline Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.strip();
    return r;
}

inline Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

inline Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.strip();
    return r;
}

inline bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

/// Quotient-and-remainder over Q; divisor must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polyfun: division by the zero polynomial");
    Poly q;
    if (a.degree() >= b.degree()) q.c.assign(a.c.size() - b.c.size() + 1, Rational(0));
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
        const Rational f = a.lead() / b.lead();
        q.c[shift] += f;
        for (std::size_t i = 0; i < b.c.size(); ++i) a.c[shift + i] -= f * b.c[i];
        a.strip();
    }
    q.strip();
    return {q, a};
}

/// Rescales to integer coefficients with content 1 and positive leading
/// coefficient.
inline Poly primitive(const Poly& p) {
    if (p.is_zero()) return p;
    BigInt den_lcm = 1;
    for (const auto& v : p.c)
        den_lcm = boost::multiprecision::lcm(den_lcm, v.denominator());
    BigInt content = 0;
    std::vector<BigInt> ints(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        ints[i] = p.c[i].numerator() * (den_lcm / p.c[i].denominator());
        content = boost::multiprecision::gcd(content, boost::multiprecision::abs(ints[i]));
    }
    if (ints.back() < 0) content = -content;
    Poly r;
    r.c.resize(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) r.c[i] = Rational(ints[i] / content);
    return r;
}

/// Primitive-PRS gcd, returned in primitive form.
inline Poly gcd(Poly a, Poly b) {
    a = primitive(a);
    b = primitive(b);
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = primitive(r);
    }
    if (a.is_zero()) return Poly::constant(Rational(1));
    return a;
}

/// Unreduced quotient of two polynomials.
struct PolyFraction {
    Poly num = Poly::zero();
    Poly den = Poly::constant(Rational(1));

    PolyFraction reduced() const {
        const Poly g = gcd(num, den);
        PolyFraction r;
        r.num = divmod(num, g).first;
        r.den = divmod(den, g).first;
        return r;
    }

    Rational eval(const Rational& x) const {
        const Rational d = den.eval(x);
        if (d.is_zero()) throw std::domain_error("polyfun: pole at the evaluation point");
        return num.eval(x) / d;
    }
};

inline PolyFraction operator+(const PolyFraction& a, const PolyFraction& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
inline PolyFraction operator-(const PolyFraction& a, const PolyFraction& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}
inline PolyFraction operator*(const PolyFraction& a, const PolyFraction& b) {
    return {a.num * b.num, a.den * b.den};
}
inline PolyFraction operator/(const PolyFraction& a, const PolyFraction& b) {
    if (b.num.is_zero()) throw std::domain_error("polyfun: division by zero fraction");
    return {a.num * b.den, a.den * b.num};
}
inline PolyFraction operator-(const PolyFraction& a) { return {-a.num, a.den}; }

/// Equality as rational functions, by cross-multiplication (no gcd needed).
inline bool equivalent(const PolyFraction& a, const PolyFraction& b) {
    return a.num * b.den == b.num * a.den;
}

/// Scalar context running the generic symmetry evaluators over polynomial
/// fractions in q. Exponents must be nonnegative (x >= 0 keeps them so).
struct PolyFractionContext {
    using Scalar = PolyFraction;
    Scalar one() const { return {Poly::constant(Rational(1)), Poly::constant(Rational(1))}; }
    Scalar from_int(const BigInt& v) const {
        return {Poly::constant(Rational(v)), Poly::constant(Rational(1))};
    }
    Scalar q_power(const BigInt& e) const {
        if (e < 0) throw std::domain_error("polyfun: negative exponent not supported");
        return {Poly::monomial(e.convert_to<std::size_t>()), Poly::constant(Rational(1))};
    }
    Scalar euler_number(unsigned l, long long w) const;
};

}  // namespace polyfun
