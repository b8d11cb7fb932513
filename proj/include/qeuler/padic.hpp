// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qeuler/euler.hpp"
#include "qeuler/qcalc.hpp"
#include "qeuler/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qeuler {

/// Iteration budget for one truncated integral: p^N may not exceed this.
inline constexpr long long kMaxPartialSumTerms = 200000;

namespace detail {

inline bool is_odd_prime(long long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline BigInt pow_ll(long long base, unsigned e) {
    return boost::multiprecision::pow(BigInt(base), e);
}

// extended gcd inverse; throws if gcd(a, m) != 1
inline BigInt mod_inverse(BigInt a, const BigInt& m) {
    BigInt r0 = m, r1 = ((a % m) + m) % m;
    BigInt s0 = 0, s1 = 1;
    while (r1 != 0) {
        const BigInt qt = r0 / r1;
        r0 -= qt * r1;
        std::swap(r0, r1);
        s0 -= qt * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::domain_error("p-adic: division by a non-unit");
    return ((s0 % m) + m) % m;
}

}  // namespace detail

/// Truncated p-adic integer: a residue modulo p^K with tracked precision.
class PadicInt {
public:
    PadicInt(long long p, unsigned k, const BigInt& residue) : p_(p), k_(k) {
        if (!detail::is_odd_prime(p)) throw std::domain_error("PadicInt: p must be an odd prime");
        if (k == 0) throw std::domain_error("PadicInt: precision K must be >= 1");
        pk_ = detail::pow_ll(p, k);
        r_ = ((residue % pk_) + pk_) % pk_;
    }

    long long prime() const { return p_; }
    unsigned precision() const { return k_; }
    const BigInt& residue() const { return r_; }
    const BigInt& modulus() const { return pk_; }
    bool is_unit() const { return r_ % p_ != 0; }

    /// p-adic valuation of the residue, capped at K (v(0) = K).
    unsigned valuation() const {
        if (r_ == 0) return k_;
        unsigned v = 0;
        BigInt t = r_;
        while (t % p_ == 0) {
            t /= p_;
            ++v;
        }
        return v < k_ ? v : k_;
    }

    PadicInt operator+(const PadicInt& o) const { return with(r_ + o.check(*this).r_); }
    PadicInt operator-(const PadicInt& o) const { return with(r_ - o.check(*this).r_); }
    PadicInt operator*(const PadicInt& o) const { return with(r_ * o.check(*this).r_); }
    PadicInt operator/(const PadicInt& o) const {
        o.check(*this);
        if (!o.is_unit()) throw std::domain_error("p-adic: division by a non-unit");
        return with(r_ * detail::mod_inverse(o.r_, pk_));
    }

    PadicInt pow(unsigned long long e) const {
        return with(boost::multiprecision::powm(r_, BigInt(e), pk_));
    }
    PadicInt pow(const BigInt& e) const {
        return with(boost::multiprecision::powm(r_, e, pk_));
    }

    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.r_ == b.r_;
    }

private:
    PadicInt with(const BigInt& v) const { return PadicInt(p_, k_, v); }
    const PadicInt& check(const PadicInt& o) const {
        if (p_ != o.p_ || k_ != o.k_)
            throw std::domain_error("p-adic: operands live in different rings (p, K)");
        return *this;
    }
    long long p_;
    unsigned k_;
    BigInt pk_;
    BigInt r_;
};

enum class PadicOp { add, sub, mul, div };

inline PadicInt padic_arith(const PadicInt& a, const PadicInt& b, PadicOp op) {
    switch (op) {
        case PadicOp::add: return a + b;
        case PadicOp::sub: return a - b;
        case PadicOp::mul: return a * b;
        case PadicOp::div: return a / b;
    }
    throw std::logic_error("padic_arith: bad op");
}

/// Embeds a rational with denominator coprime to p into Z/p^K.
inline PadicInt padic_normalize(long long p, unsigned k, const Rational& v) {
    PadicInt probe(p, k, 0);  // validates (p, K)
    const BigInt den = v.denominator();
    if (den % p == 0)
        throw std::domain_error("padic_normalize: denominator divisible by p (not in Z_p)");
    const BigInt inv = detail::mod_inverse(den, probe.modulus());
    return PadicInt(p, k, v.numerator() * inv);
}

/// Admissible p-adic q: an integer q ≡ 1 (mod p), which gives
/// |1 - q|_p <= 1/p < p^{-1/(p-1)} for odd p. Keeps the exact integer so the
/// rational-side target values can be formed from the same q.
class PadicQ {
public:
    PadicQ(long long p, unsigned k, const BigInt& q_int)
        : value_(q_int), residue_(p, k, q_int) {
        if ((q_int - 1) % p != 0) throw std::domain_error("PadicQ: q must be ≡ 1 (mod p)");
    }
    static PadicQ standard(long long p, unsigned k, long long t = 1) {
        return PadicQ(p, k, BigInt(1 + p * t));
    }

    const BigInt& exact_value() const { return value_; }
    const PadicInt& residue() const { return residue_; }
    long long prime() const { return residue_.prime(); }
    unsigned precision() const { return residue_.precision(); }
    /// The same q as an exact-rational sample (requires q ∉ {0, ±1}).
    QSample rational_sample() const { return QSample(Rational(value_)); }

private:
    BigInt value_;
    PadicInt residue_;
};

/// Integrand f(y) = [y + a]_q^m.
struct FSpec {
    unsigned degree = 0;  // m
    unsigned shift = 0;   // a
};

/// Truncated fermionic q-integral
///   S_N = (1 + q)/(1 + q^{p^N}) * sum_{x=0}^{p^N - 1} [x + a]_q^m (-q)^x,
/// computed entirely mod p^K. Brackets are accumulated as the geometric sum
/// 1 + q + ... + q^{x+a-1}, never dividing by the non-unit 1 - q.
inline PadicInt partial_sum(long long p, unsigned k, unsigned n_trunc, const FSpec& f,
                            const PadicQ& q) {
    if (n_trunc < 1) throw std::domain_error("partial_sum: N must be >= 1");
    if (p != q.prime() || k != q.precision())
        throw std::domain_error("partial_sum: (p, K) mismatch with q");
    double approx = 1;
    for (unsigned i = 0; i < n_trunc; ++i) {
        approx *= static_cast<double>(p);
        if (approx > static_cast<double>(kMaxPartialSumTerms))
            throw std::domain_error("partial_sum: p^N exceeds the iteration budget");
    }
    const long long pn = detail::pow_ll(p, n_trunc).convert_to<long long>();
    const BigInt& pk = q.residue().modulus();
    const BigInt& qr = q.residue().residue();

    BigInt bracket = 0;  // [x + a]_q
    BigInt qpow_xa = 1;  // q^{x + a}
    for (unsigned i = 0; i < f.shift; ++i) {
        bracket += qpow_xa;
        bracket %= pk;
        qpow_xa *= qr;
        qpow_xa %= pk;
    }
    BigInt qpow_x = 1;  // q^x
    BigInt acc = 0;
    for (long long x = 0; x < pn; ++x) {
        BigInt term = boost::multiprecision::powm(bracket, BigInt(f.degree), pk);
        term *= qpow_x;
        term %= pk;
        if (x % 2 == 0)
            acc += term;
        else
            acc -= term;
        acc %= pk;
        bracket += qpow_xa;
        bracket %= pk;
        qpow_xa *= qr;
        qpow_xa %= pk;
        qpow_x *= qr;
        qpow_x %= pk;
    }
    BigInt norm_den = boost::multiprecision::powm(qr, BigInt(pn), pk);
    norm_den = (norm_den + 1) % pk;
    BigInt norm = (qr + 1) % pk;
    norm *= detail::mod_inverse(norm_den, pk);
    norm %= pk;
    return PadicInt(p, k, norm * acc);
}

/// Valuation profile of S_N against the exact E_{m,q}(a) for N = 1..N_max:
/// v_N = v_p(S_N - E_{m,q}(a) mod p^K), capped at K.
inline std::vector<std::pair<unsigned, unsigned>> convergence_profile(long long p, unsigned k,
                                                                      const FSpec& f,
                                                                      const PadicQ& q,
                                                                      unsigned n_max) {
    if (n_max < 2) throw std::domain_error("convergence_profile: N_max must be >= 2");
    QEulerCache cache;
    const QSample qs = q.rational_sample();
    const Rational exact = q_euler_poly(f.degree, BracketArg::integer(f.shift, 1), qs, cache);
    const PadicInt target = padic_normalize(p, k, exact);
    std::vector<std::pair<unsigned, unsigned>> profile;
    profile.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        const PadicInt s = partial_sum(p, k, n, f, q);
        profile.emplace_back(n, (s - target).valuation());
    }
    return profile;
}

}  // namespace qeuler
