// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qeuler/euler.hpp"
#include "qeuler/padic.hpp"
#include "qeuler/qcalc.hpp"
#include "qeuler/rational.hpp"
#include "qeuler/symmetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace qeuler::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

struct IndexRange {
    unsigned lo = 0;
    unsigned hi = 0;
};

/// "a..b" or a single "k".
inline IndexRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    IndexRange r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = static_cast<unsigned>(std::stoul(text));
        } else {
            r.lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
            r.hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
        }
    } catch (const std::exception&) {
        throw std::domain_error("invalid range '" + text + "' (expected e.g. 0..8 or 5)");
    }
    if (r.lo > r.hi) throw std::domain_error("invalid range '" + text + "': lo > hi");
    return r;
}

inline Rational parse_rational(const std::string& text) {
    auto v = Rational::parse(text);
    if (!v) throw std::domain_error("invalid rational '" + text + "' (expected e.g. -2/5 or 7)");
    return *v;
}

inline std::size_t default_workers() {
    if (const char* env = std::getenv("QEULER_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return 1;
}

namespace detail {

/// Runs fn(i) for i in [0, n) on `workers` threads; callers index their own
/// output slots, so results are position-stable regardless of scheduling.
template <class Fn>
void parallel_for_indexed(std::size_t n, std::size_t workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

inline std::string join_ints(const std::vector<int>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace detail

// --------------------------------- results ----------------------------------

struct EulerRow {
    unsigned n = 0;
    long long w = 1;
    Rational q;
    Rational number;
    std::optional<long long> x;
    std::optional<Rational> poly;
};

struct ClassicalRow {
    unsigned n = 0;
    Rational x;
    Rational value;
};

struct ShiftRow {
    unsigned m = 0;
    unsigned n_shift = 1;
    Rational q;
    Rational lhs;
    Rational rhs;
    bool pass = true;
};

struct PadicProfile {
    long long p = 3;
    unsigned precision = 8;
    BigInt q;
    unsigned m = 0;
    unsigned a = 0;
    std::vector<std::pair<unsigned, unsigned>> profile;  // (N, v_N)
    bool monotone = true;
    bool floor_ok = true;  // v_N >= N - 1
};

struct RunConfig {
    std::string subcommand;
    Format format = Format::text;
    std::string out_path;  // empty: stdout
    std::size_t workers = 1;
    std::uint64_t seed = 0;

    IndexRange n_range;                // euler, classical
    std::vector<long long> w_list{1};  // euler
    std::vector<Rational> q_list;      // euler
    std::vector<long long> x_ints;     // euler, symmetry, certify
    std::vector<Rational> x_rats;      // classical
    std::vector<long long> weights;    // symmetry, certify
    unsigned m_max = 0;                // symmetry, certify
    std::size_t q_count = 8;
    std::vector<long long> p_list{3, 5, 7};  // padic
    long long t_mult = 1;                    // padic: q = 1 + p t
    unsigned precision = 8;                  // padic K
    unsigned padic_m_max = 4;                // padic
    unsigned a_max = 2;                      // padic
    unsigned n_max = 5;                      // padic N_max
    unsigned shift_m_max = 10;               // shift
    unsigned shift_max = 6;                  // shift
};

// ------------------------------- serialization ------------------------------

inline Json envelope(const Json& config, const Json& results, bool pass, const Json& witnesses) {
    Json doc;
    doc["schema_version"] = 1;
    doc["config"] = config;
    doc["results"] = results;
    doc["verdict"] = pass ? "PASS" : "FAIL";
    doc["witnesses"] = witnesses;
    return doc;
}

inline Json to_json(const PadicInt& v) {
    Json j;
    j["p"] = v.prime();
    j["K"] = v.precision();
    j["residue"] = v.residue().str();
    return j;
}

struct Document {
    Json json;        // schema_version / config / results / verdict / witnesses
    std::string csv;  // flat table, one header line
    std::string text; // human-oriented, not schema-stable
    bool pass = true;
};

inline std::string render(const Document& doc, Format fmt) {
    switch (fmt) {
        case Format::json: return doc.json.dump(2) + "\n";
        case Format::csv: return doc.csv;
        case Format::text: return doc.text;
    }
    return {};
}

// --------------------------------- runners ----------------------------------

inline Document run_euler(const RunConfig& cfg) {
    QEulerCache cache;
    std::vector<EulerRow> rows;
    for (const long long w : cfg.w_list) {
        if (w < 1) throw std::domain_error("euler: base power W must be >= 1");
        for (const Rational& qv : cfg.q_list) {
            const QSample q(qv);
            for (unsigned n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
                EulerRow row;
                row.n = n;
                row.w = w;
                row.q = qv;
                row.number = q_euler_number(n, w, q, cache);
                if (cfg.x_ints.empty()) {
                    rows.push_back(row);
                    continue;
                }
                for (const long long x : cfg.x_ints) {
                    EulerRow r = row;
                    r.x = x;
                    r.poly = q_euler_poly(n, BracketArg::integer(x, w), q, cache);
                    rows.push_back(std::move(r));
                }
            }
        }
    }

    Document doc;
    Json config;
    config["subcommand"] = "euler";
    config["n_lo"] = cfg.n_range.lo;
    config["n_hi"] = cfg.n_range.hi;
    config["W"] = cfg.w_list;
    Json qs = Json::array();
    for (const auto& qv : cfg.q_list) qs.push_back(qv.str());
    config["q"] = qs;
    config["x"] = cfg.x_ints;
    Json results = Json::array();
    std::ostringstream csv, text;
    csv << "n,W,q,number,x,poly\n";
    text << "Carlitz q-Euler numbers E_{n,q^W}" << (cfg.x_ints.empty() ? "" : " and polynomials")
         << "\n";
    for (const auto& r : rows) {
        Json jr;
        jr["n"] = r.n;
        jr["W"] = r.w;
        jr["q"] = r.q.str();
        jr["number"] = r.number.str();
        csv << r.n << ',' << r.w << ',' << r.q.str() << ',' << r.number.str() << ',';
        text << "  n=" << r.n << " W=" << r.w << " q=" << r.q.str() << "  E=" << r.number.str();
        if (r.x) {
            jr["x"] = *r.x;
            jr["poly"] = r.poly->str();
            csv << *r.x << ',' << r.poly->str();
            text << "  E(" << *r.x << ")=" << r.poly->str();
        } else {
            csv << ',';
        }
        csv << '\n';
        text << '\n';
        results.push_back(std::move(jr));
    }
    text << "verdict: PASS\n";
    doc.pass = true;
    doc.json = envelope(config, results, true, Json::array());
    doc.csv = csv.str();
    doc.text = text.str();
    return doc;
}

inline Document run_classical(const RunConfig& cfg) {
    ClassicalEulerCache cache;
    std::vector<ClassicalRow> rows;
    for (const Rational& x : cfg.x_rats)
        for (unsigned n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n)
            rows.push_back({n, x, classical_euler_poly(n, x, cache)});

    Document doc;
    Json config;
    config["subcommand"] = "classical";
    config["n_lo"] = cfg.n_range.lo;
    config["n_hi"] = cfg.n_range.hi;
    Json xs = Json::array();
    for (const auto& x : cfg.x_rats) xs.push_back(x.str());
    config["x"] = xs;
    Json results = Json::array();
    std::ostringstream csv, text;
    csv << "n,x,value\n";
    text << "Classical Euler polynomials E_n(x)\n";
    for (const auto& r : rows) {
        Json jr;
        jr["n"] = r.n;
        jr["x"] = r.x.str();
        jr["value"] = r.value.str();
        results.push_back(std::move(jr));
        csv << r.n << ',' << r.x.str() << ',' << r.value.str() << '\n';
        text << "  E_" << r.n << "(" << r.x.str() << ") = " << r.value.str() << '\n';
    }
    text << "verdict: PASS\n";
    doc.pass = true;
    doc.json = envelope(config, results, true, Json::array());
    doc.csv = csv.str();
    doc.text = text.str();
    return doc;
}

inline Document run_shift(const RunConfig& cfg) {
    const auto points = sample_points(cfg.q_count, {}, cfg.seed);
    std::vector<ShiftRow> rows;
    for (unsigned m = 0; m <= cfg.shift_m_max; ++m)
        for (unsigned k = 1; k <= cfg.shift_max; ++k)
            for (const QSample& q : points) {
                const auto [lhs, rhs] = shift_identity_sides(m, k, q);
                rows.push_back({m, k, q.value(), lhs, rhs, lhs == rhs});
            }

    Document doc;
    Json config;
    config["subcommand"] = "shift";
    config["m_max"] = cfg.shift_m_max;
    config["shift_max"] = cfg.shift_max;
    config["q_count"] = cfg.q_count;
    config["seed"] = cfg.seed;
    Json results = Json::array();
    Json witnesses = Json::array();
    std::ostringstream csv, text;
    csv << "m,n_shift,q,lhs,rhs,pass\n";
    text << "Integral shift identity: q^k E_{m,q}(k) + (-1)^{k-1} E_{m,q} vs "
            "[2]_q sum_l (-1)^{k-1-l} q^l [l]_q^m\n";
    bool pass = true;
    for (const auto& r : rows) {
        Json jr;
        jr["m"] = r.m;
        jr["n_shift"] = r.n_shift;
        jr["q"] = r.q.str();
        jr["lhs"] = r.lhs.str();
        jr["rhs"] = r.rhs.str();
        jr["pass"] = r.pass;
        results.push_back(std::move(jr));
        csv << r.m << ',' << r.n_shift << ',' << r.q.str() << ',' << r.lhs.str() << ','
            << r.rhs.str() << ',' << (r.pass ? "true" : "false") << '\n';
        if (!r.pass) {
            pass = false;
            Json w;
            w["kind"] = "shift-identity";
            w["m"] = r.m;
            w["n_shift"] = r.n_shift;
            w["q"] = r.q.str();
            w["lhs"] = r.lhs.str();
            w["rhs"] = r.rhs.str();
            witnesses.push_back(std::move(w));
            text << "  FAIL m=" << r.m << " k=" << r.n_shift << " q=" << r.q.str()
                 << " lhs=" << r.lhs.str() << " rhs=" << r.rhs.str() << '\n';
        }
    }
    text << "checked " << rows.size() << " instances\n";
    text << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
    doc.pass = pass;
    doc.json = envelope(config, results, pass, witnesses);
    doc.csv = csv.str();
    doc.text = text.str();
    return doc;
}

inline Document run_padic(const RunConfig& cfg) {
    struct Task {
        long long p;
        unsigned m;
        unsigned a;
    };
    std::vector<Task> tasks;
    for (const long long p : cfg.p_list)
        for (unsigned m = 0; m <= cfg.padic_m_max; ++m)
            for (unsigned a = 0; a <= cfg.a_max; ++a) tasks.push_back({p, m, a});

    std::vector<PadicProfile> profiles(tasks.size());
    detail::parallel_for_indexed(tasks.size(), cfg.workers, [&](std::size_t i) {
        const Task& t = tasks[i];
        const PadicQ q = PadicQ::standard(t.p, cfg.precision, cfg.t_mult);
        PadicProfile pr;
        pr.p = t.p;
        pr.precision = cfg.precision;
        pr.q = q.exact_value();
        pr.m = t.m;
        pr.a = t.a;
        pr.profile = convergence_profile(t.p, cfg.precision, FSpec{t.m, t.a}, q, cfg.n_max);
        unsigned prev = 0;
        for (const auto& [n, v] : pr.profile) {
            if (v + 1 < n) pr.floor_ok = false;  // v_N >= N - 1
            if (n > 1 && v < prev) pr.monotone = false;
            prev = v;
        }
        profiles[i] = std::move(pr);
    });

    Document doc;
    Json config;
    config["subcommand"] = "padic";
    config["p"] = cfg.p_list;
    config["t"] = cfg.t_mult;
    config["K"] = cfg.precision;
    config["m_max"] = cfg.padic_m_max;
    config["a_max"] = cfg.a_max;
    config["N_max"] = cfg.n_max;
    Json results = Json::array();
    Json witnesses = Json::array();
    std::ostringstream csv, text;
    csv << "p,K,q,m,a,N,v,floor_ok,monotone\n";
    text << "Fermionic q-integral truncation profiles: v_N = v_p(S_N - E_{m,q}(a))\n";
    bool pass = true;
    for (const auto& pr : profiles) {
        Json jr;
        jr["p"] = pr.p;
        jr["K"] = pr.precision;
        jr["q"] = pr.q.str();
        jr["m"] = pr.m;
        jr["a"] = pr.a;
        Json jprofile = Json::array();
        text << "  p=" << pr.p << " q=" << pr.q.str() << " m=" << pr.m << " a=" << pr.a << " v_N=[";
        for (std::size_t i = 0; i < pr.profile.size(); ++i) {
            const auto& [n, v] = pr.profile[i];
            Json step;
            step["N"] = n;
            step["v"] = v;
            jprofile.push_back(std::move(step));
            csv << pr.p << ',' << pr.precision << ',' << pr.q.str() << ',' << pr.m << ',' << pr.a
                << ',' << n << ',' << v << ',' << (pr.floor_ok ? "true" : "false") << ','
                << (pr.monotone ? "true" : "false") << '\n';
            text << (i ? " " : "") << v;
        }
        jr["profile"] = std::move(jprofile);
        jr["monotone"] = pr.monotone;
        jr["floor_ok"] = pr.floor_ok;
        results.push_back(std::move(jr));
        text << "]" << (pr.monotone && pr.floor_ok ? "" : "  FAIL") << '\n';
        if (!pr.monotone || !pr.floor_ok) {
            pass = false;
            Json w;
            w["kind"] = pr.floor_ok ? "padic-monotonicity" : "padic-floor";
            w["p"] = pr.p;
            w["m"] = pr.m;
            w["a"] = pr.a;
            Json jprof = Json::array();
            for (const auto& [n, v] : pr.profile) jprof.push_back(Json{{"N", n}, {"v", v}});
            w["profile"] = std::move(jprof);
            witnesses.push_back(std::move(w));
        }
    }
    text << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
    doc.pass = pass;
    doc.json = envelope(config, results, pass, witnesses);
    doc.csv = csv.str();
    doc.text = text.str();
    return doc;
}

inline Document run_symmetry(const RunConfig& cfg, VerifyMode mode) {
    const WeightVector wv(cfg.weights);
    std::vector<long long> xs = cfg.x_ints.empty() ? std::vector<long long>{0} : cfg.x_ints;
    QEulerCache cache;
    std::vector<SymmetryReport> reports(xs.size());
    detail::parallel_for_indexed(xs.size(), cfg.workers, [&](std::size_t i) {
        reports[i] = verify_invariance(wv, cfg.m_max, xs[i], cfg.q_count, mode, cfg.seed, &cache);
    });

    Document doc;
    Json config;
    config["subcommand"] = mode == VerifyMode::certified ? "certify" : "symmetry";
    config["weights"] = cfg.weights;
    config["m_max"] = cfg.m_max;
    config["x"] = xs;
    config["q_count"] = cfg.q_count;
    config["mode"] = mode == VerifyMode::certified ? "certified" : "sampled";
    config["seed"] = cfg.seed;
    Json results = Json::array();
    Json witnesses = Json::array();
    std::ostringstream csv, text;
    csv << "x,m,q,sigma,thm2,thm3,pass\n";
    text << "Symmetric-group invariance of the q-Euler sums, weights=(";
    for (std::size_t i = 0; i < cfg.weights.size(); ++i)
        text << (i ? "," : "") << cfg.weights[i];
    text << ")\n";
    bool pass = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const SymmetryReport& rep = reports[i];
        Json jr;
        jr["x"] = rep.x;
        jr["samples_used"] = rep.samples_used;
        if (rep.degree_bound >= 0) jr["degree_bound"] = rep.degree_bound;
        Json jsamples = Json::array();
        for (const auto& s : rep.samples) jsamples.push_back(s.str());
        jr["samples"] = std::move(jsamples);
        Json jcells = Json::array();
        for (const auto& cell : rep.cells) {
            Json jc;
            jc["m"] = cell.m;
            jc["q"] = cell.q.str();
            Json jvals = Json::array();
            for (const auto& sv : cell.values) {
                Json jv;
                jv["sigma"] = sv.sigma;
                jv["thm2"] = sv.thm2.str();
                jv["thm3"] = sv.thm3.str();
                jvals.push_back(std::move(jv));
                csv << rep.x << ',' << cell.m << ',' << cell.q.str() << ','
                    << detail::join_ints(sv.sigma, '|') << ',' << sv.thm2.str() << ','
                    << sv.thm3.str() << ',' << (cell.pass ? "true" : "false") << '\n';
            }
            jc["values"] = std::move(jvals);
            jc["pass"] = cell.pass;
            jcells.push_back(std::move(jc));
        }
        jr["cells"] = std::move(jcells);
        jr["thm2_invariant"] = rep.thm2_invariant;
        jr["thm3_invariant"] = rep.thm3_invariant;
        jr["routes_equal"] = rep.routes_equal;
        jr["pass"] = rep.pass;
        results.push_back(std::move(jr));
        for (const auto& w : rep.witnesses) {
            Json jw;
            jw["kind"] = w.kind;
            jw["x"] = rep.x;
            jw["m"] = w.m;
            jw["q"] = w.q.str();
            jw["sigma_a"] = w.sigma_a;
            jw["sigma_b"] = w.sigma_b;
            jw["value_a"] = w.value_a.str();
            jw["value_b"] = w.value_b.str();
            witnesses.push_back(std::move(jw));
        }
        text << "  x=" << rep.x << " samples=" << rep.samples_used;
        if (rep.degree_bound >= 0) text << " degree_bound=" << rep.degree_bound;
        text << (rep.pass ? " OK" : " FAIL") << '\n';
        if (!rep.pass) pass = false;
    }
    for (const auto& w : witnesses)
        text << "  witness: " << w["kind"].get<std::string>() << " m=" << w["m"]
             << " q=" << w["q"].get<std::string>() << " " << w["value_a"].get<std::string>()
             << " != " << w["value_b"].get<std::string>() << '\n';
    text << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
    doc.pass = pass;
    doc.json = envelope(config, results, pass, witnesses);
    doc.csv = csv.str();
    doc.text = text.str();
    return doc;
}

// ----------------------------------- entry ----------------------------------

inline int emit(const Document& doc, const RunConfig& cfg, std::ostream& out_stream) {
    const std::string rendered = render(doc, cfg.format);
    if (cfg.out_path.empty()) {
        out_stream << rendered;
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file '" + cfg.out_path + "'");
        f << rendered;
    }
    return doc.pass ? 0 : 1;
}

/// Entry point. Args exclude the program name. Exit codes: 0 all verdicts
/// PASS, 1 at least one FAIL (witnesses in the report), 2 usage/config error.
inline int run(std::vector<std::string> args, std::ostream& out_stream = std::cout,
               std::ostream& err_stream = std::cerr) {
    CLI::App app{"Exact Carlitz q-Euler numbers, fermionic p-adic q-integrals, and "
                 "symmetric-group identity verification"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.workers = default_workers();

    std::string format_str = "text";
    std::string n_range_str = "0..8";
    std::vector<std::string> q_strs;
    std::vector<std::string> x_rat_strs;

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--format", format_str, "output format: text, json, or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sc->add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
        sc->add_option("--workers", cfg.workers,
                       "worker threads for grid cells (default: QEULER_WORKERS or 1)");
    };

    CLI::App* euler = app.add_subcommand("euler", "tables of q-Euler numbers and polynomials");
    euler->add_option("--n", n_range_str, "index range, e.g. 0..8 or 5");
    euler->add_option("--w", cfg.w_list, "base powers W (q^W)")->delimiter(',');
    euler->add_option("--q", q_strs, "rational sample points, e.g. 2,5/2")
        ->delimiter(',')
        ->required();
    euler->add_option("--x", cfg.x_ints, "integer polynomial arguments")->delimiter(',');
    add_common(euler);

    CLI::App* classical = app.add_subcommand("classical", "tables of classical Euler polynomials");
    classical->add_option("--n", n_range_str, "index range, e.g. 0..8 or 5");
    classical->add_option("--x", x_rat_strs, "rational arguments (default 0)")->delimiter(',');
    add_common(classical);

    CLI::App* symmetry =
        app.add_subcommand("symmetry", "verify S_n invariance and route equality at sampled q");
    symmetry->add_option("--weights", cfg.weights, "odd positive weights, e.g. 1,3")
        ->delimiter(',')
        ->required();
    symmetry->add_option("--m-max", cfg.m_max, "largest degree m to check (default 0)");
    symmetry->add_option("--x", cfg.x_ints, "nonnegative integer arguments (default 0)")
        ->delimiter(',');
    symmetry->add_option("--q-count", cfg.q_count, "number of sample points (default 8)");
    symmetry->add_option("--seed", cfg.seed, "sample shuffle seed; 0 keeps enumeration order");
    add_common(symmetry);

    CLI::App* certify = app.add_subcommand(
        "certify", "verify the invariance as a formal identity in q (degree-bound sampling)");
    certify->add_option("--weights", cfg.weights, "odd positive weights, e.g. 1,3")
        ->delimiter(',')
        ->required();
    certify->add_option("--m-max", cfg.m_max, "largest degree m to certify (default 0)");
    certify->add_option("--x", cfg.x_ints, "nonnegative integer arguments (default 0)")
        ->delimiter(',');
    certify->add_option("--q-count", cfg.q_count,
                        "minimum sample count (raised to degree bound + 1)");
    certify->add_option("--seed", cfg.seed, "sample shuffle seed");
    add_common(certify);

    CLI::App* padic =
        app.add_subcommand("padic", "truncation/convergence profiles of the fermionic q-integral");
    padic->add_option("--p", cfg.p_list, "odd primes (default 3,5,7)")->delimiter(',');
    padic->add_option("--t", cfg.t_mult, "q = 1 + p*t (default t = 1)");
    padic->add_option("--K", cfg.precision, "working precision p^K (default 8)");
    padic->add_option("--m-max", cfg.padic_m_max, "largest integrand degree (default 4)");
    padic->add_option("--a-max", cfg.a_max, "largest integrand shift (default 2)");
    padic->add_option("--N-max", cfg.n_max, "deepest truncation level (default 5)");
    add_common(padic);

    CLI::App* shift = app.add_subcommand("shift", "verify the integral shift identity exactly");
    shift->add_option("--m-max", cfg.shift_m_max, "largest bracket power (default 10)");
    shift->add_option("--shift-max", cfg.shift_max, "largest shift n (default 6)");
    shift->add_option("--q-count", cfg.q_count, "number of sample points (default 8)");
    shift->add_option("--seed", cfg.seed, "sample shuffle seed");
    add_common(shift);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out_stream, err_stream);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out_stream, err_stream);
        return 2;
    }

    cfg.format = format_str == "json" ? Format::json
               : format_str == "csv"  ? Format::csv
                                      : Format::text;
    try {
        cfg.n_range = parse_range(n_range_str);
        Document doc;
        if (euler->parsed()) {
            cfg.subcommand = "euler";
            for (const auto& s : q_strs) cfg.q_list.push_back(parse_rational(s));
            doc = run_euler(cfg);
        } else if (classical->parsed()) {
            cfg.subcommand = "classical";
            for (const auto& s : x_rat_strs) cfg.x_rats.push_back(parse_rational(s));
            if (cfg.x_rats.empty()) cfg.x_rats.emplace_back(0);
            doc = run_classical(cfg);
        } else if (symmetry->parsed()) {
            cfg.subcommand = "symmetry";
            doc = run_symmetry(cfg, VerifyMode::sampled);
        } else if (certify->parsed()) {
            cfg.subcommand = "certify";
            doc = run_symmetry(cfg, VerifyMode::certified);
        } else if (padic->parsed()) {
            cfg.subcommand = "padic";
            doc = run_padic(cfg);
        } else if (shift->parsed()) {
            cfg.subcommand = "shift";
            doc = run_shift(cfg);
        } else {
            err_stream << "error: no subcommand selected\n";
            return 2;
        }
        return emit(doc, cfg, out_stream);
    } catch (const std::exception& e) {
        err_stream << "error: " << e.what() << '\n';
        return 2;
    }
}

inline int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args));
}

}  // namespace qeuler::cli
