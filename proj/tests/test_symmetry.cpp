// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#include "qeuler/symmetry.hpp"

#include "mutation.hpp"
#include "polyfun.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qeuler;

polyfun::PolyFraction polyfun::PolyFractionContext::euler_number(unsigned l, long long w) const {
    PolyFractionContext self;
    return euler_number_closed_eval(self, l, w);
}

TEST_CASE("domain type guards") {
    REQUIRE_THROWS_AS(WeightVector({}), std::domain_error);
    REQUIRE_THROWS_AS(WeightVector({1, 2}), std::domain_error);
    REQUIRE_THROWS_AS(WeightVector({-3}), std::domain_error);
    REQUIRE_NOTHROW(WeightVector({1, 3, 5}));
    REQUIRE_THROWS_AS(Permutation({1, 1}), std::domain_error);
    REQUIRE_THROWS_AS(Permutation({0, 1}), std::domain_error);
    REQUIRE(Permutation::all(3).size() == 6);
    REQUIRE(Permutation::identity(2).images() == std::vector<int>{1, 2});
}

TEST_CASE("mixed-radix odometer is little-endian and complete") {
    std::vector<std::vector<long long>> seen;
    for_each_mixed_radix({2, 3}, [&](const MixedRadixIndex& idx, long long ksum) {
        REQUIRE(ksum == idx.k[0] + idx.k[1]);
        seen.push_back(idx.k);
    });
    REQUIRE(seen.size() == 6);
    REQUIRE(seen.front() == std::vector<long long>{0, 0});
    REQUIRE(seen[1] == std::vector<long long>{1, 0});  // first digit spins fastest
    REQUIRE(seen.back() == std::vector<long long>{1, 2});

    std::size_t count = 0;
    for_each_mixed_radix({}, [&](const MixedRadixIndex& idx, long long) {
        REQUIRE(idx.k.empty());
        ++count;
    });
    REQUIRE(count == 1);  // single empty tuple
}

TEST_CASE("T-hat hand values") {
    const QSample q2{Rational(2)};
    // single weight 1: only k = 0, bracket is 0, so the value is δ_{l,m}
    for (unsigned m = 0; m <= 3; ++m)
        for (unsigned l = 0; l <= m; ++l)
            REQUIRE(t_hat(m, l, {1}, q2) == (l == m ? Rational(1) : Rational(0)));
    REQUIRE(t_hat(0, 0, {3}, q2) == Rational(3));   // 1 - 2 + 4
    REQUIRE(t_hat(1, 0, {3}, q2) == Rational(10));  // 0 - q [1]_q + q^2 [2]_q
    REQUIRE(t_hat(2, 2, {3}, q2) == Rational(57));  // 1 - 8 + 64 at exponent l+1 = 3
    REQUIRE_THROWS_AS(t_hat(1, 2, {3}, q2), std::domain_error);
}

TEST_CASE("theorem 2: base cases and hand values") {
    QEulerCache cache;
    // n = 1 collapses to E_{m,q}(w_1 x) / [2]_q
    for (const QSample& q : sample_points(3))
        for (long long w1 : {1LL, 3LL, 5LL})
            for (unsigned m = 0; m <= 3; ++m)
                for (long long x = 0; x <= 2; ++x) {
                    const Rational expected =
                        q_euler_poly(m, BracketArg::integer(w1 * x, 1), q, cache) /
                        (Rational(1) + q.value());
                    REQUIRE(theorem2_value(WeightVector({w1}), Permutation::identity(1), m, x, q,
                                           cache) == expected);
                }
    // n = 2, w = (1,3), m = 0, x = 0, q = 2: both permutations give 1/3
    const WeightVector w13({1, 3});
    const QSample q2{Rational(2)};
    REQUIRE(theorem2_value(w13, Permutation({1, 2}), 0, 0, q2, cache) == Rational(1, 3));
    REQUIRE(theorem2_value(w13, Permutation({2, 1}), 0, 0, q2, cache) == Rational(1, 3));
}

TEST_CASE("theorem 3 agrees with theorem 2 everywhere it is checked") {
    QEulerCache cache;
    const QSample q2{Rational(2)};
    REQUIRE(theorem3_value(WeightVector({1, 3}), Permutation({1, 2}), 0, 0, q2, cache) ==
            Rational(1, 3));
    REQUIRE(theorem3_value(WeightVector({1, 3}), Permutation({2, 1}), 0, 0, q2, cache) ==
            Rational(1, 3));
    // n = 1 collapse matches theorem 2
    for (const QSample& q : sample_points(2))
        for (unsigned m = 0; m <= 3; ++m)
            REQUIRE(theorem3_value(WeightVector({5}), Permutation::identity(1), m, 1, q, cache) ==
                    theorem2_value(WeightVector({5}), Permutation::identity(1), m, 1, q, cache));
    // cross-route oracle on (3,5)
    const WeightVector w35({3, 5});
    for (const Permutation& sigma : Permutation::all(2))
        REQUIRE(theorem3_value(w35, sigma, 3, 1, q2, cache) ==
                theorem2_value(w35, sigma, 3, 1, q2, cache));
}

TEST_CASE("S_n invariance on a three-weight configuration") {
    QEulerCache cache;
    const WeightVector w135({1, 3, 5});
    const QSample q{Rational(3, 2)};
    const Rational ref = theorem2_value(w135, Permutation::identity(3), 2, 1, q, cache);
    for (const Permutation& sigma : Permutation::all(3)) {
        REQUIRE(theorem2_value(w135, sigma, 2, 1, q, cache) == ref);
        REQUIRE(theorem3_value(w135, sigma, 2, 1, q, cache) == ref);
    }
}

TEST_CASE("identical weights make every permuted value trivially equal") {
    QEulerCache cache;
    const WeightVector ones({1, 1, 1});
    const QSample q{Rational(7, 2)};
    const Rational ref = theorem2_value(ones, Permutation::identity(3), 3, 2, q, cache);
    for (const Permutation& sigma : Permutation::all(3))
        REQUIRE(theorem2_value(ones, sigma, 3, 2, q, cache) == ref);
}

TEST_CASE("verify_invariance: all-ones weights are trivially invariant") {
    const auto rep = verify_invariance(WeightVector({1, 1, 1}), 3, 1, 3, VerifyMode::sampled);
    REQUIRE(rep.pass);
}

TEST_CASE("verify_invariance: sampled run, report shape, budget") {
    QEulerCache cache;
    const auto rep = verify_invariance(WeightVector({1, 3}), 4, 0, 8, VerifyMode::sampled, 0,
                                       &cache);
    REQUIRE(rep.pass);
    REQUIRE(rep.samples_used == 8);
    REQUIRE(rep.cells.size() == 5 * 8);
    for (const auto& cell : rep.cells) {
        REQUIRE(cell.values.size() == 2);
        for (const auto& sv : cell.values) {
            REQUIRE(sv.thm2 == cell.values.front().thm2);  // PASS ⇒ identical rationals
            REQUIRE(sv.thm3 == sv.thm2);
        }
    }
    REQUIRE(rep.witnesses.empty());

    // cache effectiveness: one recurrence row per distinct (W_sigma, q)
    const std::size_t w_count = 2;  // W ∈ {1, 3}
    REQUIRE(cache.size() <= (4 + 1) * w_count * rep.samples_used);

    REQUIRE_THROWS_AS(
        verify_invariance(WeightVector({3, 5, 7}), 20, 0, 100000, VerifyMode::sampled),
        std::domain_error);
    REQUIRE_THROWS_AS(verify_invariance(WeightVector({1, 3}), 1, -1, 4, VerifyMode::sampled),
                      std::domain_error);
    REQUIRE_THROWS_AS(verify_invariance(WeightVector({1, 3}), 1, 0, 0, VerifyMode::sampled),
                      std::domain_error);
}

TEST_CASE("certify_bound: small cases and soundness against the symbolic oracle") {
    REQUIRE(certify_bound(WeightVector({1}), 0, 0) >= 1);
    REQUIRE(certify_bound(WeightVector({1}), 0, 0) <= 8);

    polyfun::PolyFractionContext sym;
    // (1,3), m = 1, x = 0: reduced symbolic degrees are bounded by D
    {
        const WeightVector wv({1, 3});
        const long long d = certify_bound(wv, 1, 0);
        for (const Permutation& sigma : Permutation::all(2)) {
            for (const polyfun::PolyFraction& f :
                 {theorem2_eval(sym, wv, sigma, 1, 0), theorem3_eval(sym, wv, sigma, 1, 0)}) {
                const auto red = f.reduced();
                REQUIRE(red.num.degree() <= d);
                REQUIRE(red.den.degree() <= d);
            }
        }
    }
    // (3,5), m = 2, x = 1: degree bound dominates the reduced forms, and the
    // two routes expand to the same rational function
    {
        const WeightVector wv({3, 5});
        const long long d = certify_bound(wv, 2, 1);
        const auto id2 = theorem2_eval(sym, wv, Permutation({1, 2}), 2, 1);
        const auto sw2 = theorem2_eval(sym, wv, Permutation({2, 1}), 2, 1);
        const auto id3 = theorem3_eval(sym, wv, Permutation({1, 2}), 2, 1);
        const auto sw3 = theorem3_eval(sym, wv, Permutation({2, 1}), 2, 1);
        REQUIRE(polyfun::equivalent(id2, sw2));
        REQUIRE(polyfun::equivalent(id2, id3));
        REQUIRE(polyfun::equivalent(id2, sw3));
        const auto red = id2.reduced();
        REQUIRE(red.num.degree() <= d);
        REQUIRE(red.den.degree() <= d);
        REQUIRE(red.num.degree() >= 1);  // not a constant; the bound is doing real work
    }
}

TEST_CASE("verify_invariance: certified mode is a formal identity check") {
    const auto rep = verify_invariance(WeightVector({1, 3}), 2, 0, 1, VerifyMode::certified);
    REQUIRE(rep.pass);
    REQUIRE(rep.degree_bound >= 1);
    REQUIRE(rep.samples_used == static_cast<std::size_t>(rep.degree_bound) + 1);
}

TEST_CASE("a wrong cached q-Euler value surfaces as FAIL with a minimal witness") {
    QEulerCache cache;
    const QSample q0 = sample_points(1)[0];
    cache.store(1, 1, q0, Rational(999));  // wrong E_{1,q}; write-once keeps it
    const auto rep =
        verify_invariance(WeightVector({1, 3}), 1, 0, 1, VerifyMode::sampled, 0, &cache);
    REQUIRE(!rep.pass);
    REQUIRE(!rep.thm2_invariant);
    REQUIRE(!rep.witnesses.empty());
    const auto& w = rep.witnesses.front();
    REQUIRE(w.value_a != w.value_b);
    REQUIRE(w.sigma_a.size() == 2);
    REQUIRE(w.sigma_b.size() == 2);
    bool any_cell_failed = false;
    for (const auto& cell : rep.cells) any_cell_failed = any_cell_failed || !cell.pass;
    REQUIRE(any_cell_failed);
}

TEST_CASE("certification detects a sign flip in T-hat") {
    QEulerCache cache;
    const WeightVector wv({1, 3});
    for (const long long x : {0LL, 1LL}) {
        for (unsigned m = 0; m <= 2; ++m) {
            const long long d = certify_bound(wv, m, x);
            const auto points = sample_points(static_cast<std::size_t>(d) + 1);
            for (const bool flip_all : {true, false}) {
                std::size_t mismatches = 0;
                for (const QSample& q : points)
                    for (const Permutation& sigma : Permutation::all(2)) {
                        const Rational good = theorem2_value(wv, sigma, m, x, q, cache);
                        const Rational bad =
                            testing::mutated_theorem3(wv, sigma, m, x, q, cache, flip_all);
                        if (good != bad) ++mismatches;
                    }
                REQUIRE(mismatches >= 1);
            }
        }
    }
}
