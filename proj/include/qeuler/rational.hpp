// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qeuler {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational scalar. Always held in canonical form:
/// lowest terms, denominator > 0.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}  // NOLINT: implicit on purpose
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = boost::multiprecision::cpp_rational(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }
    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// q^e for integer e (negative allowed). 0^0 = 1; 0^negative rejected.
    static Rational pow(const Rational& base, long long e) {
        if (e == 0) return Rational(1);
        if (base.is_zero()) {
            if (e < 0) throw std::domain_error("Rational: 0 raised to negative power");
            return Rational(0);
        }
        const auto ue = static_cast<unsigned long long>(e < 0 ? -e : e);
        if (ue > std::numeric_limits<unsigned>::max())
            throw std::domain_error("Rational: exponent out of range");
        BigInt n = boost::multiprecision::pow(base.numerator(), static_cast<unsigned>(ue));
        BigInt d = boost::multiprecision::pow(base.denominator(), static_cast<unsigned>(ue));
        // numerator/denominator of the base are coprime, so no reduction needed
        Rational r;
        if (e > 0)
            r.v_ = boost::multiprecision::cpp_rational(n, d);
        else
            r.v_ = boost::multiprecision::cpp_rational(d, n);
        return r;
    }

    Rational abs() const { return *this < Rational(0) ? -*this : *this; }

    /// Canonical text form: "-2/5", integers without the "/1".
    std::string str() const {
        std::string s = numerator().str();
        if (denominator() != 1) {
            s += '/';
            s += denominator().str();
        }
        return s;
    }

    /// Parses "n" or "n/d"; returns nullopt on malformed input or zero denominator.
    static std::optional<Rational> parse(std::string_view text) {
        auto parse_int = [](std::string_view t) -> std::optional<BigInt> {
            if (t.empty()) return std::nullopt;
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size()) return std::nullopt;
            for (std::size_t j = i; j < t.size(); ++j)
                if (t[j] < '0' || t[j] > '9') return std::nullopt;
            return BigInt(std::string(t));
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            auto n = parse_int(text);
            if (!n) return std::nullopt;
            return Rational(*n);
        }
        auto n = parse_int(text.substr(0, slash));
        auto d = parse_int(text.substr(slash + 1));
        if (!n || !d || *d == 0) return std::nullopt;
        return Rational(*n, *d);
    }

private:
    boost::multiprecision::cpp_rational v_;
};

/// Exact binomial coefficient, multiplicative form.
inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace qeuler
