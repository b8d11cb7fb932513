// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qeuler/rational.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace qeuler {

/// Admissible evaluation point for q. Excludes 0 and ±1: a rational q with
/// q^k = ±1 forces q = ±1, so every denominator 1 - q^W and 1 + q^{W(l+1)}
/// of the closed forms is nonzero at an admissible q.
class QSample {
public:
    explicit QSample(Rational v) : value_(std::move(v)) {
        if (value_ == Rational(0) || value_ == Rational(1) || value_ == Rational(-1))
            throw std::domain_error("QSample: q must avoid {0, 1, -1}");
    }
    const Rational& value() const { return value_; }

    friend bool operator==(const QSample& a, const QSample& b) { return a.value_ == b.value_; }
    friend bool operator<(const QSample& a, const QSample& b) { return a.value_ < b.value_; }

private:
    Rational value_;
};

/// A bracket argument r = numer/denom taken with respect to the base q^W.
/// Invariant: W * r is an integer, so q^{W*r} is a genuine integer power.
class BracketArg {
public:
    BracketArg(const Rational& r, long long base_power) : w_(base_power) {
        if (base_power < 1) throw std::domain_error("BracketArg: base power must be >= 1");
        numer_ = r.numerator();
        denom_ = r.denominator();
        if (BigInt(base_power) % denom_ != 0)
            throw std::domain_error("BracketArg: W * r is not an integer");
        scaled_ = numer_ * (BigInt(base_power) / denom_);
    }
    static BracketArg integer(long long x, long long base_power) {
        return BracketArg(Rational(x), base_power);
    }

    const BigInt& numer() const { return numer_; }
    const BigInt& denom() const { return denom_; }
    long long base_power() const { return w_; }
    /// W * r as an exact integer.
    const BigInt& scaled() const { return scaled_; }
    Rational value() const { return Rational(numer_, denom_); }

private:
    BigInt numer_;
    BigInt denom_;
    long long w_;
    BigInt scaled_;
};

namespace detail {
inline long long checked_exponent(const BigInt& e) {
    if (e > BigInt(std::numeric_limits<long long>::max()) ||
        e < BigInt(std::numeric_limits<long long>::min()))
        throw std::domain_error("q power: exponent out of range");
    return e.convert_to<long long>();
}
}  // namespace detail

/// q^e for an exact integer exponent e.
inline Rational q_pow_int(const BigInt& e, const QSample& q) {
    return Rational::pow(q.value(), detail::checked_exponent(e));
}

/// q^{W*e}; rejects non-integral W*e.
inline Rational q_pow(const Rational& e, long long w, const QSample& q) {
    BracketArg a(e, w);
    return q_pow_int(a.scaled(), q);
}

/// [r]_{q^W} = (1 - q^{W r}) / (1 - q^W), exact.
inline Rational q_bracket(const BracketArg& arg, const QSample& q) {
    const Rational qw = Rational::pow(q.value(), arg.base_power());
    return (Rational(1) - q_pow_int(arg.scaled(), q)) / (Rational(1) - qw);
}

inline Rational q_bracket(const Rational& r, long long w, const QSample& q) {
    return q_bracket(BracketArg(r, w), q);
}

/// Deterministic admissible sample points, skipping `exclusions`.
///
/// Enumeration order is c + 1/j for c = 1, 2, 3, ... and j = 1 .. 2c-1,
/// which starts 2, 3, 5/2, 7/3, 4, 7/2, 10/3, 13/4, 16/5, ...; all values are
/// > 1 and pairwise distinct. A nonzero seed shuffles the selected points
/// (fixed Fisher-Yates over an xorshift-mixed mt19937_64 stream so output is
/// identical across platforms).
inline std::vector<QSample> sample_points(std::size_t count,
                                          const std::set<Rational>& exclusions = {},
                                          std::uint64_t seed = 0) {
    std::vector<QSample> out;
    out.reserve(count);
    for (long long c = 1; out.size() < count; ++c) {
        for (long long j = 1; j <= 2 * c - 1 && out.size() < count; ++j) {
            Rational v = Rational(c) + Rational(1, j);
            if (exclusions.count(v)) continue;
            out.emplace_back(v);
        }
    }
    if (seed != 0 && out.size() > 1) {
        std::uint64_t state = seed;
        auto next = [&state]() {
            // splitmix64 step
            state += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        for (std::size_t i = out.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(next() % (i + 1));
            std::swap(out[i], out[j]);
        }
    }
    return out;
}

}  // namespace qeuler
