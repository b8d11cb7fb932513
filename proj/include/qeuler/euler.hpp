// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qeuler/qcalc.hpp"
#include "qeuler/rational.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace qeuler {

/// Memo table for the q-Euler numbers E_{n, q^W}, keyed by (n, W, q).
/// Write-once per key: an insert against an existing key keeps the stored
/// value. Safe for concurrent readers/writers.
class QEulerCache {
public:
    std::optional<Rational> lookup(unsigned n, long long w, const QSample& q) const {
        std::lock_guard<std::mutex> lock(mu_);
        const auto it = map_.find(Key{n, w, q.value()});
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    /// Returns the value now stored under the key (the existing one if the
    /// key was already present).
    const Rational& store(unsigned n, long long w, const QSample& q, Rational value) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto [it, inserted] = map_.emplace(Key{n, w, q.value()}, std::move(value));
        (void)inserted;
        return it->second;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.size();
    }

private:
    struct Key {
        unsigned n;
        long long w;
        Rational q;
        bool operator<(const Key& o) const {
            if (n != o.n) return n < o.n;
            if (w != o.w) return w < o.w;
            return q < o.q;
        }
    };
    mutable std::mutex mu_;
    std::map<Key, Rational> map_;
};

/// Carlitz-type q-Euler number E_{n, Q} with Q = q^W, by the umbral
/// recurrence E_0 = 1, (1 + Q^{n+1}) E_n = -Q * sum_{l<n} C(n,l) Q^l E_l.
/// Populates the cache for every index up to n.
inline Rational q_euler_number(unsigned n, long long w, const QSample& q, QEulerCache& cache) {
    if (auto hit = cache.lookup(n, w, q)) return *hit;
    const Rational qq = Rational::pow(q.value(), w);
    std::vector<Rational> row;
    row.reserve(n + 1);
    for (unsigned l = 0; l <= n; ++l) {
        if (auto hit = cache.lookup(l, w, q)) {
            row.push_back(*hit);
            continue;
        }
        Rational value;
        if (l == 0) {
            value = Rational(1);
        } else {
            Rational sum(0);
            Rational qpow(1);  // Q^j
            for (unsigned j = 0; j < l; ++j) {
                sum += Rational(binomial(l, j)) * qpow * row[j];
                qpow *= qq;
            }
            value = -qq * sum / (Rational(1) + Rational::pow(qq, l + 1));
        }
        row.push_back(cache.store(l, w, q, std::move(value)));
    }
    return row[n];
}

/// Closed form E_{n, Q} = (1 - Q)^{-n} * sum_{l=0}^{n} C(n,l) (-1)^l (1 + Q) / (1 + Q^{l+1}),
/// derived from the binomial expansion of [y]_Q^n under the alternating
/// partial sums. Independent cross-check of q_euler_number.
inline Rational q_euler_number_closed(unsigned n, long long w, const QSample& q) {
    const Rational qq = Rational::pow(q.value(), w);
    const Rational one_plus = Rational(1) + qq;
    Rational sum(0);
    Rational qpow = qq;  // Q^{l+1}
    for (unsigned l = 0; l <= n; ++l) {
        const Rational term = Rational(binomial(n, l)) * one_plus / (Rational(1) + qpow);
        sum += (l % 2 == 0) ? term : -term;
        qpow *= qq;
    }
    return sum / Rational::pow(Rational(1) - qq, n);
}

/// q-Euler polynomial E_{n, Q}(x) = sum_l C(n,l) q^{W l x} E_{l, Q} [x]_Q^{n-l},
/// Q = q^W, for a bracket argument x with W x integral.
inline Rational q_euler_poly(unsigned n, const BracketArg& x, const QSample& q,
                             QEulerCache& cache) {
    const long long w = x.base_power();
    q_euler_number(n, w, q, cache);  // fill the row once
    const Rational br = q_bracket(x, q);
    const Rational qx = q_pow_int(x.scaled(), q);  // q^{W x}
    Rational sum(0);
    Rational qxl(1);                               // q^{W l x}
    Rational brpow = Rational::pow(br, n);         // [x]_Q^{n-l}
    const bool br_zero = br.is_zero();
    for (unsigned l = 0; l <= n; ++l) {
        if (br_zero)
            brpow = (l == n) ? Rational(1) : Rational(0);
        sum += Rational(binomial(n, l)) * qxl * *cache.lookup(l, w, q) * brpow;
        qxl *= qx;
        if (!br_zero && l < n) brpow /= br;
    }
    return sum;
}

/// Witt-style closed form of the polynomial:
/// E_{n, Q}(x) = (1 - Q)^{-n} sum_l C(n,l) (-1)^l q^{W l x} (1 + Q) / (1 + Q^{l+1}).
inline Rational q_euler_poly_closed(unsigned n, const BracketArg& x, const QSample& q) {
    const long long w = x.base_power();
    const Rational qq = Rational::pow(q.value(), w);
    const Rational one_plus = Rational(1) + qq;
    const Rational qx = q_pow_int(x.scaled(), q);
    Rational sum(0);
    Rational qxl(1);
    Rational qpow = qq;
    for (unsigned l = 0; l <= n; ++l) {
        const Rational term = Rational(binomial(n, l)) * qxl * one_plus / (Rational(1) + qpow);
        sum += (l % 2 == 0) ? term : -term;
        qxl *= qx;
        qpow *= qq;
    }
    return sum / Rational::pow(Rational(1) - qq, n);
}

/// Classical Euler numbers E_n: E_0 = 1, sum_j C(n,j) E_j + E_n = 2 δ_{0,n}.
class ClassicalEulerCache {
public:
    const Rational& number(unsigned n) {
        while (row_.size() <= n) {
            const unsigned m = static_cast<unsigned>(row_.size());
            if (m == 0) {
                row_.emplace_back(1);
                continue;
            }
            Rational sum(0);
            for (unsigned j = 0; j < m; ++j) sum += Rational(binomial(m, j)) * row_[j];
            row_.push_back(-sum / Rational(2));
        }
        return row_[n];
    }

private:
    std::vector<Rational> row_;
};

inline Rational classical_euler_number(unsigned n, ClassicalEulerCache& cache) {
    return cache.number(n);
}

/// E_n(x) = sum_l C(n,l) x^{n-l} E_l  (0^0 = 1).
inline Rational classical_euler_poly(unsigned n, const Rational& x, ClassicalEulerCache& cache) {
    cache.number(n);
    Rational sum(0);
    Rational xpow = Rational::pow(x, n);
    const bool x_zero = x.is_zero();
    for (unsigned l = 0; l <= n; ++l) {
        if (x_zero) xpow = (l == n) ? Rational(1) : Rational(0);
        sum += Rational(binomial(n, l)) * xpow * cache.number(l);
        if (!x_zero && l < n) xpow /= x;
    }
    return sum;
}

/// Both sides of the integral shift identity with f(y) = [y]_q^m:
///   q^k E_{m,q}(k) + (-1)^{k-1} E_{m,q}  vs  [2]_q sum_{l<k} (-1)^{k-1-l} q^l [l]_q^m.
/// The right side is summed directly from brackets, independent of the
/// q-Euler machinery on the left.
inline std::pair<Rational, Rational> shift_identity_sides(unsigned m, unsigned n_shift,
                                                          const QSample& q) {
    if (n_shift == 0) throw std::domain_error("shift identity: n_shift must be >= 1");
    QEulerCache cache;
    const Rational lhs_poly = q_euler_poly(m, BracketArg::integer(n_shift, 1), q, cache);
    const Rational lhs = Rational::pow(q.value(), n_shift) * lhs_poly +
                         ((n_shift % 2 == 1) ? *cache.lookup(m, 1, q) : -*cache.lookup(m, 1, q));
    Rational rhs(0);
    for (unsigned l = 0; l < n_shift; ++l) {
        Rational f;
        if (l == 0)
            f = (m == 0) ? Rational(1) : Rational(0);  // [0]^m, 0^0 = 1
        else
            f = Rational::pow(q_bracket(Rational(l), 1, q), m);
        const Rational term = Rational::pow(q.value(), l) * f;
        rhs += ((n_shift - 1 - l) % 2 == 0) ? term : -term;
    }
    rhs *= Rational(1) + q.value();
    return {lhs, rhs};
}

inline bool verify_shift_identity(unsigned m, unsigned n_shift, const QSample& q) {
    const auto [lhs, rhs] = shift_identity_sides(m, n_shift, q);
    return lhs == rhs;
}

}  // namespace qeuler
