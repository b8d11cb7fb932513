// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qeuler/euler.hpp"
#include "qeuler/qcalc.hpp"
#include "qeuler/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace qeuler {

/// Tuple (w_1, ..., w_n) of odd positive weights.
class WeightVector {
public:
    explicit WeightVector(std::vector<long long> w) : w_(std::move(w)) {
        if (w_.empty()) throw std::domain_error("WeightVector: at least one weight required");
        for (const long long v : w_)
            if (v < 1 || v % 2 == 0)
                throw std::domain_error("WeightVector: weights must be odd positive integers");
    }
    std::size_t size() const { return w_.size(); }
    long long operator[](std::size_t i) const { return w_[i]; }
    const std::vector<long long>& values() const { return w_; }

private:
    std::vector<long long> w_;
};

/// Permutation of {1..n}, stored by its one-based image list.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (const int v : images_) {
            if (v < 1 || static_cast<std::size_t>(v) > images_.size() || seen[v - 1])
                throw std::domain_error("Permutation: images must be a bijection on {1..n}");
            seen[v - 1] = true;
        }
    }
    static Permutation identity(std::size_t n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }
    /// All of S_n in lexicographic order of the image lists.
    static std::vector<Permutation> all(std::size_t n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 1);
        std::vector<Permutation> out;
        do out.emplace_back(im);
        while (std::next_permutation(im.begin(), im.end()));
        return out;
    }

    std::size_t size() const { return images_.size(); }
    /// Zero-based image of zero-based position j.
    std::size_t apply(std::size_t j) const { return static_cast<std::size_t>(images_[j]) - 1; }
    const std::vector<int>& images() const { return images_; }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }

private:
    std::vector<int> images_;
};

/// Summation index (k_1, ..., k_{n-1}) with 0 <= k_l < radix_l.
struct MixedRadixIndex {
    std::vector<long long> k;
};

/// Little-endian odometer over all mixed-radix tuples; fn(index, sum of digits).
template <class Fn>
void for_each_mixed_radix(const std::vector<long long>& radices, Fn&& fn) {
    MixedRadixIndex idx;
    idx.k.assign(radices.size(), 0);
    long long ksum = 0;
    for (;;) {
        fn(static_cast<const MixedRadixIndex&>(idx), ksum);
        std::size_t pos = 0;
        while (pos < radices.size()) {
            if (++idx.k[pos] < radices[pos]) {
                ++ksum;
                break;
            }
            ksum -= radices[pos] - 1;
            idx.k[pos] = 0;
            ++pos;
        }
        if (pos == radices.size()) return;
    }
}

// ---------------------------------------------------------------------------
// Generic evaluation. A context supplies the scalar type and the atoms
// (integer constants, integer powers of q, q-Euler numbers); the theorem
// expressions below are written once and instantiated per scalar:
// exact rationals for values, degree bounds for certification, and the test
// suite's polynomial fractions for the one-off symbolic oracle.
// ---------------------------------------------------------------------------

template <class S>
S pow_u(S base, unsigned e, const S& one) {
    S result = one;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

/// Evaluation over exact rationals at a fixed sample q.
class RationalEvalContext {
public:
    using Scalar = Rational;
    RationalEvalContext(const QSample& q, QEulerCache* cache) : q_(q), cache_(cache) {}

    Scalar one() const { return Rational(1); }
    Scalar from_int(const BigInt& v) const { return Rational(v); }
    Scalar q_power(const BigInt& e) const { return q_pow_int(e, q_); }
    Scalar euler_number(unsigned l, long long w) const {
        if (!cache_) throw std::logic_error("RationalEvalContext: no cache bound");
        return q_euler_number(l, w, q_, *cache_);
    }

private:
    QSample q_;
    QEulerCache* cache_;
};

/// Pair of degree bounds (numerator, denominator) of a value viewed as an
/// unreduced ratio of polynomials in q. Sound under the expression operations:
/// sums take the max cross degree, products add, division swaps.
struct DegreeBound {
    std::int64_t num = 0;
    std::int64_t den = 0;

    friend DegreeBound operator+(const DegreeBound& a, const DegreeBound& b) {
        return {std::max(a.num + b.den, b.num + a.den), a.den + b.den};
    }
    friend DegreeBound operator-(const DegreeBound& a, const DegreeBound& b) { return a + b; }
    friend DegreeBound operator*(const DegreeBound& a, const DegreeBound& b) {
        return {a.num + b.num, a.den + b.den};
    }
    friend DegreeBound operator/(const DegreeBound& a, const DegreeBound& b) {
        return {a.num + b.den, a.den + b.num};
    }
    friend DegreeBound operator-(const DegreeBound& a) { return a; }
};

/// The n-independent closed form of E_{n, q^W} evaluated in any scalar;
/// contributes the explicit denominator degrees during certification.
template <class Ctx>
typename Ctx::Scalar euler_number_closed_eval(Ctx& ctx, unsigned n, long long w) {
    using S = typename Ctx::Scalar;
    const S one = ctx.one();
    const S qq = ctx.q_power(BigInt(w));
    const S one_plus = one + qq;
    S sum = ctx.from_int(BigInt(0));
    for (unsigned l = 0; l <= n; ++l) {
        const BigInt c = (l % 2 == 0) ? binomial(n, l) : -binomial(n, l);
        sum = sum + ctx.from_int(c) * one_plus / (one + ctx.q_power(BigInt(w) * (l + 1)));
    }
    return sum / pow_u(one - qq, n, one);
}

class DegreeBoundContext {
public:
    using Scalar = DegreeBound;
    Scalar one() const { return {0, 0}; }
    Scalar from_int(const BigInt&) const { return {0, 0}; }
    Scalar q_power(const BigInt& e) const {
        const auto v = e.convert_to<std::int64_t>();
        return v >= 0 ? DegreeBound{v, 0} : DegreeBound{0, -v};
    }
    Scalar euler_number(unsigned l, long long w) const {
        DegreeBoundContext self;
        return euler_number_closed_eval(self, l, w);
    }
};

namespace detail {

struct SigmaSplit {
    std::vector<long long> prefix;  // w_{σ(1)} .. w_{σ(n-1)}
    long long wlast = 1;            // w_{σ(n)}
    long long w_prod = 1;           // W = prod(prefix)
    std::vector<long long> cof;     // cof_j = W / prefix_j
};

inline SigmaSplit split_by_sigma(const WeightVector& wv, const Permutation& sigma) {
    if (sigma.size() != wv.size())
        throw std::domain_error("permutation size does not match weight count");
    SigmaSplit s;
    const std::size_t n = wv.size();
    s.prefix.reserve(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) s.prefix.push_back(wv[sigma.apply(j)]);
    s.wlast = wv[sigma.apply(n - 1)];
    for (const long long u : s.prefix) {
        if (s.w_prod > 1000000 / u)
            throw std::domain_error("weight product exceeds the supported range");
        s.w_prod *= u;
    }
    s.cof.reserve(s.prefix.size());
    for (const long long u : s.prefix) s.cof.push_back(s.w_prod / u);
    return s;
}

/// Per-digit tables of q^{mult * cof_j * k_j}; the power for a whole tuple is
/// the product of one entry per digit, so the odometer loop never
/// exponentiates.
template <class Ctx>
std::vector<std::vector<typename Ctx::Scalar>> digit_power_tables(
    Ctx& ctx, const std::vector<long long>& radices, const std::vector<long long>& cof,
    long long mult) {
    using S = typename Ctx::Scalar;
    std::vector<std::vector<S>> tables(radices.size());
    for (std::size_t j = 0; j < radices.size(); ++j) {
        tables[j].reserve(static_cast<std::size_t>(radices[j]));
        tables[j].push_back(ctx.one());
        const S step = ctx.q_power(BigInt(mult) * cof[j]);
        for (long long t = 1; t < radices[j]; ++t) tables[j].push_back(tables[j].back() * step);
    }
    return tables;
}

template <class S>
S tuple_power(const std::vector<std::vector<S>>& tables, const MixedRadixIndex& idx, const S& one) {
    S b = one;
    for (std::size_t j = 0; j < tables.size(); ++j)
        if (idx.k[j] != 0) b = b * tables[j][static_cast<std::size_t>(idx.k[j])];
    return b;
}

}  // namespace detail

/// E_{m, q^W}(num / W) for an exact integer num = W * argument.
template <class Ctx>
typename Ctx::Scalar euler_poly_scaled_eval(Ctx& ctx, unsigned m, const BigInt& num, long long w) {
    using S = typename Ctx::Scalar;
    const S one = ctx.one();
    const S qx = ctx.q_power(num);
    const S br = (one - qx) / (one - ctx.q_power(BigInt(w)));
    std::vector<S> brpow{one};
    brpow.reserve(m + 1);
    for (unsigned i = 1; i <= m; ++i) brpow.push_back(brpow.back() * br);
    S sum = ctx.from_int(BigInt(0));
    S qxl = one;
    for (unsigned l = 0; l <= m; ++l) {
        sum = sum + ctx.from_int(binomial(m, l)) * qxl * ctx.euler_number(l, w) * brpow[m - l];
        if (l < m) qxl = qxl * qx;
    }
    return sum;
}

/// All T-hat sums T̂_{m, q^{wlast}}(prefix | l) for l = 0..m, from a single
/// odometer walk:
///   T̂(.. | l) = sum_k q^{wlast (l+1) S_k} [S_k]_{q^{wlast}}^{m-l} (-1)^{|k|},
/// S_k = sum_j (prod_{i != j} u_i) k_j.
template <class Ctx>
std::vector<typename Ctx::Scalar> t_hat_row(Ctx& ctx, unsigned m,
                                            const std::vector<long long>& prefix, long long wlast) {
    using S = typename Ctx::Scalar;
    const S one = ctx.one();
    long long w_prod = 1;
    for (const long long u : prefix) w_prod *= u;
    std::vector<long long> cof;
    cof.reserve(prefix.size());
    for (const long long u : prefix) cof.push_back(w_prod / u);
    const auto tables = detail::digit_power_tables(ctx, prefix, cof, wlast);
    const S inv_base = one / (one - ctx.q_power(BigInt(wlast)));
    std::vector<S> row(m + 1, ctx.from_int(BigInt(0)));
    std::vector<S> brpow(m + 1, one);
    for_each_mixed_radix(prefix, [&](const MixedRadixIndex& idx, long long ksum) {
        const S f = detail::tuple_power(tables, idx, one);  // q^{wlast S_k}
        const S br = (one - f) * inv_base;
        for (unsigned i = 1; i <= m; ++i) brpow[i] = brpow[i - 1] * br;
        S fp = f;  // f^{l+1}
        for (unsigned l = 0; l <= m; ++l) {
            const S term = fp * brpow[m - l];
            row[l] = (ksum % 2 == 0) ? row[l] + term : row[l] - term;
            if (l < m) fp = fp * f;
        }
    });
    return row;
}

template <class Ctx>
typename Ctx::Scalar t_hat_eval(Ctx& ctx, unsigned m, unsigned l,
                                const std::vector<long long>& prefix, long long wlast) {
    if (l > m) throw std::domain_error("t_hat: l must satisfy 0 <= l <= m");
    return t_hat_row(ctx, m, prefix, wlast)[l];
}

/// Direct permuted sum: ([W_σ]_q^m / [2]_{q^{W_σ}}) * alternating mixed-radix
/// sum of q^{w_σ(n) S_k} E_{m, q^{W_σ}}(w_σ(n) x + w_σ(n) Σ_j k_j / w_σ(j)).
template <class Ctx>
typename Ctx::Scalar theorem2_eval(Ctx& ctx, const WeightVector& wv, const Permutation& sigma,
                                   unsigned m, long long x) {
    using S = typename Ctx::Scalar;
    const auto sp = detail::split_by_sigma(wv, sigma);
    const S one = ctx.one();
    const S qw = ctx.q_power(BigInt(sp.w_prod));
    const S inv_den = one / (one - qw);
    std::vector<S> erow;
    erow.reserve(m + 1);
    for (unsigned l = 0; l <= m; ++l) erow.push_back(ctx.euler_number(l, sp.w_prod));
    const S a = ctx.q_power(BigInt(sp.wlast) * x * sp.w_prod);  // q^{wlast x W}
    const auto tables = detail::digit_power_tables(ctx, sp.prefix, sp.cof, sp.wlast);
    // E_{m,Q}(arg_k) = sum_l C(m,l) P^l E_l ((1-P) invD)^{m-l} collected as a
    // polynomial sum_d gamma_d P^d in P = q^{wlast (x W + S_k)}, so the
    // odometer loop is a bare Horner evaluation.
    std::vector<S> inv_den_pow{one};
    inv_den_pow.reserve(m + 1);
    for (unsigned i = 1; i <= m; ++i) inv_den_pow.push_back(inv_den_pow.back() * inv_den);
    std::vector<S> gamma(m + 1, ctx.from_int(BigInt(0)));
    for (unsigned l = 0; l <= m; ++l)
        for (unsigned d = l; d <= m; ++d) {
            const BigInt c = binomial(m, l) * binomial(m - l, d - l);
            const S coeff = ctx.from_int((d - l) % 2 == 0 ? c : -c) * erow[l];
            gamma[d] = gamma[d] + coeff * inv_den_pow[m - l];
        }
    S total = ctx.from_int(BigInt(0));
    for_each_mixed_radix(sp.prefix, [&](const MixedRadixIndex& idx, long long ksum) {
        const S b = detail::tuple_power(tables, idx, one);  // q^{wlast S_k}
        const S p_full = a * b;                             // q^{wlast (x W + S_k)}
        S poly = gamma[m];
        for (unsigned d = m; d-- > 0;) poly = poly * p_full + gamma[d];
        const S term = b * poly;
        total = (ksum % 2 == 0) ? total + term : total - term;
    });
    const S bracket_w = (one - qw) / (one - ctx.q_power(BigInt(1)));  // [W]_q
    return pow_u(bracket_w, m, one) * total / (one + qw);
}

/// T-hat decomposition of the same sum:
/// (1/[2]_{q^{W_σ}}) Σ_l C(m,l) [W_σ]_q^l [w_σ(n)]_q^{m-l}
/// E_{l, q^{W_σ}}(w_σ(n) x) T̂_{m, q^{w_σ(n)}}(prefix | l).
template <class Ctx>
typename Ctx::Scalar theorem3_eval(Ctx& ctx, const WeightVector& wv, const Permutation& sigma,
                                   unsigned m, long long x) {
    using S = typename Ctx::Scalar;
    const auto sp = detail::split_by_sigma(wv, sigma);
    const S one = ctx.one();
    const S qw = ctx.q_power(BigInt(sp.w_prod));
    const S q1 = ctx.q_power(BigInt(1));
    const S bracket_w = (one - qw) / (one - q1);
    const S bracket_last = (one - ctx.q_power(BigInt(sp.wlast))) / (one - q1);
    const auto that_row = t_hat_row(ctx, m, sp.prefix, sp.wlast);
    S total = ctx.from_int(BigInt(0));
    for (unsigned l = 0; l <= m; ++l) {
        const S epoly =
            euler_poly_scaled_eval(ctx, l, BigInt(sp.wlast) * x * sp.w_prod, sp.w_prod);
        total = total + ctx.from_int(binomial(m, l)) * pow_u(bracket_w, l, one) *
                            pow_u(bracket_last, m - l, one) * epoly * that_row[l];
    }
    return total / (one + qw);
}

// -------------------------- public exact-value API --------------------------

inline Rational theorem2_value(const WeightVector& wv, const Permutation& sigma, unsigned m,
                               long long x, const QSample& q, QEulerCache& cache) {
    RationalEvalContext ctx(q, &cache);
    return theorem2_eval(ctx, wv, sigma, m, x);
}

inline Rational theorem3_value(const WeightVector& wv, const Permutation& sigma, unsigned m,
                               long long x, const QSample& q, QEulerCache& cache) {
    RationalEvalContext ctx(q, &cache);
    return theorem3_eval(ctx, wv, sigma, m, x);
}

/// T̂_{m, q_eff}(prefix | l) with q_eff already raised by the caller.
inline Rational t_hat(unsigned m, unsigned l, const std::vector<long long>& prefix,
                      const QSample& q_eff) {
    RationalEvalContext ctx(q_eff, nullptr);
    return t_hat_eval(ctx, m, l, prefix, 1);
}

/// Sound degree bound D for certification: across all σ and both theorem
/// expressions, any pairwise difference is a rational function whose
/// numerator has degree <= D, so agreement at D+1 admissible points proves
/// identity in q.
inline long long certify_bound(const WeightVector& wv, unsigned m, long long x) {
    if (x < 0) throw std::domain_error("certify_bound: x must be >= 0");
    DegreeBoundContext ctx;
    std::int64_t max_num = 0;
    std::int64_t max_den = 0;
    for (const Permutation& sigma : Permutation::all(wv.size())) {
        for (const DegreeBound& d :
             {theorem2_eval(ctx, wv, sigma, m, x), theorem3_eval(ctx, wv, sigma, m, x)}) {
            max_num = std::max(max_num, d.num);
            max_den = std::max(max_den, d.den);
        }
    }
    return max_num + max_den;
}

// ----------------------------- verification runs ----------------------------

enum class VerifyMode { sampled, certified };

struct SigmaValue {
    std::vector<int> sigma;
    Rational thm2;
    Rational thm3;
};

struct SymmetryCell {
    unsigned m = 0;
    Rational q;
    std::vector<SigmaValue> values;
    bool pass = true;
};

struct SymmetryWitness {
    std::string kind;  // "thm2-invariance" | "thm3-invariance" | "route-equality"
    unsigned m = 0;
    Rational q;
    std::vector<int> sigma_a;
    std::vector<int> sigma_b;
    Rational value_a;
    Rational value_b;
};

struct SymmetryReport {
    std::vector<long long> weights;
    unsigned m_max = 0;
    long long x = 0;
    std::size_t q_count_requested = 0;
    VerifyMode mode = VerifyMode::sampled;
    std::uint64_t seed = 0;
    std::size_t samples_used = 0;
    long long degree_bound = -1;  // certified mode only
    std::vector<Rational> samples;
    std::vector<SymmetryCell> cells;
    bool thm2_invariant = true;
    bool thm3_invariant = true;
    bool routes_equal = true;
    bool pass = false;
    std::vector<SymmetryWitness> witnesses;
};

struct VerifyLimits {
    /// Ceiling on n! * prod(w) * (m_max + 1) * q_count.
    long long budget = 50000000;
    std::size_t max_witnesses = 64;
};

/// Evaluates both theorem expressions for every σ ∈ S_n, every m <= m_max and
/// every sampled q; PASS iff for each fixed (m, q) all values agree across σ
/// and across the two theorems. In certified mode the sample count is raised
/// to certify_bound + 1, upgrading agreement to a formal identity in q.
inline SymmetryReport verify_invariance(const WeightVector& wv, unsigned m_max, long long x,
                                        std::size_t q_count, VerifyMode mode,
                                        std::uint64_t seed = 0, QEulerCache* shared_cache = nullptr,
                                        const VerifyLimits& limits = {}) {
    if (x < 0) throw std::domain_error("verify_invariance: x must be >= 0");
    SymmetryReport rep;
    rep.weights = wv.values();
    rep.m_max = m_max;
    rep.x = x;
    rep.q_count_requested = q_count;
    rep.mode = mode;
    rep.seed = seed;

    BigInt base_cost = 1;
    for (std::size_t i = 2; i <= wv.size(); ++i) base_cost *= i;
    for (const long long w : wv.values()) base_cost *= w;
    base_cost *= BigInt(m_max) + 1;

    std::size_t samples_needed = q_count;
    if (mode == VerifyMode::certified) {
        if (base_cost > limits.budget)  // reject before the degree tracking spins
            throw std::domain_error(
                "verify_invariance: configuration exceeds the evaluation budget");
        long long d = 0;
        for (unsigned m = 0; m <= m_max; ++m) d = std::max(d, certify_bound(wv, m, x));
        rep.degree_bound = d;
        samples_needed = std::max<std::size_t>(q_count, static_cast<std::size_t>(d) + 1);
    }
    if (samples_needed == 0) throw std::domain_error("verify_invariance: q_count must be >= 1");
    if (base_cost * BigInt(samples_needed) > limits.budget)
        throw std::domain_error("verify_invariance: configuration exceeds the evaluation budget");

    rep.samples_used = samples_needed;
    const auto points = sample_points(samples_needed, {}, seed);
    for (const QSample& s : points) rep.samples.push_back(s.value());

    QEulerCache local_cache;
    QEulerCache& cache = shared_cache ? *shared_cache : local_cache;
    const auto sigmas = Permutation::all(wv.size());

    auto witness = [&](const char* kind, unsigned m, const Rational& q, const SigmaValue& a,
                       const SigmaValue& b, const Rational& va, const Rational& vb) {
        if (rep.witnesses.size() < limits.max_witnesses)
            rep.witnesses.push_back({kind, m, q, a.sigma, b.sigma, va, vb});
    };

    for (unsigned m = 0; m <= m_max; ++m) {
        for (const QSample& q : points) {
            SymmetryCell cell;
            cell.m = m;
            cell.q = q.value();
            for (const Permutation& sigma : sigmas) {
                SigmaValue sv;
                sv.sigma = sigma.images();
                sv.thm2 = theorem2_value(wv, sigma, m, x, q, cache);
                sv.thm3 = theorem3_value(wv, sigma, m, x, q, cache);
                cell.values.push_back(std::move(sv));
            }
            const SigmaValue& ref = cell.values.front();
            for (const SigmaValue& sv : cell.values) {
                if (sv.thm2 != ref.thm2) {
                    cell.pass = false;
                    rep.thm2_invariant = false;
                    witness("thm2-invariance", m, q.value(), ref, sv, ref.thm2, sv.thm2);
                }
                if (sv.thm3 != ref.thm3) {
                    cell.pass = false;
                    rep.thm3_invariant = false;
                    witness("thm3-invariance", m, q.value(), ref, sv, ref.thm3, sv.thm3);
                }
                if (sv.thm2 != sv.thm3) {
                    cell.pass = false;
                    rep.routes_equal = false;
                    witness("route-equality", m, q.value(), sv, sv, sv.thm2, sv.thm3);
                }
            }
            rep.cells.push_back(std::move(cell));
        }
    }
    rep.pass = rep.thm2_invariant && rep.thm3_invariant && rep.routes_equal;
    return rep;
}

}  // namespace qeuler
