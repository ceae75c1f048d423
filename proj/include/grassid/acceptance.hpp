#pragma once

// Acceptance suites 1-10, shared by the acceptance test and `grassid selftest`.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "grassid/canon.hpp"
#include "grassid/checker.hpp"
#include "grassid/reduce.hpp"
#include "grassid/sample.hpp"
#include "grassid/text.hpp"

namespace grassid::acceptance {

struct Outcome {
    int id = 0;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;
    double seconds = 0;
};

namespace detail {

class Tally {
public:
    explicit Tally(Outcome& o) : o_(o) {}

    // Records a failure; only the first few are kept as notes.
    void fail(const std::string& what) {
        o_.pass = false;
        if (++failures_ <= 5) o_.notes.push_back("FAIL " + what);
    }
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) fail(what);
    }
    void info(const std::string& s) { o_.notes.push_back(s); }
    int checks() const { return checks_; }
    int failures() const { return failures_; }

private:
    Outcome& o_;
    int checks_ = 0, failures_ = 0;
};

inline std::string fmt_count(int bad, int total) { return std::to_string(bad) + "/" + std::to_string(total); }

inline std::string field_name(const Field& f) { return "GF(" + std::to_string(f.q()) + ")"; }

inline GElem blade_of(const FieldPtr& f, int n, std::vector<int> idx, Elem c = 1) {
    return GElem::blade(f, n, Blade::from_indices(idx), c);
}

inline Elem int_elem(const Field& f, long v) {
    Elem acc = 0;
    for (long i = 0; i < v; ++i) acc = f.add(acc, 1);
    return acc;
}

inline FreePoly standard_poly(const FieldPtr& f, int d, bool signed_sum) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    FreePoly out(f);
    do {
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
        Word w;
        for (int i : perm) w.push_back(Var::y(i));
        out.add_term(w, signed_sum && inv % 2 ? f->neg(1) : Elem{1});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline std::vector<IdealSpec> reduction_specs(const FieldPtr& f) {
    return {IdealSpec::i1(f), IdealSpec::i2(f), IdealSpec::i3(f, 1), IdealSpec::i3(f, 2), IdealSpec::i4(f, 1),
            IdealSpec::i4(f, 2)};
}

inline FreePoly corpus_poly(const FieldPtr& f, Rng& rng) {
    return random_poly(f, rng, PolyShape{3, 3, 5, 6});
}

}  // namespace detail

inline Outcome explicit_evaluations() {
    Outcome o{1, "explicit evaluations"};
    detail::Tally t(o);
    for (int p : {3, 5}) {
        auto f = make_field(p);
        for (int n = 1; n <= 3; ++n) {
            FreePoly br = FreePoly::one(f);
            for (int i = 1; i <= n; ++i)
                br = br * commutator(FreePoly::var(f, Var::y(2 * i - 1)), FreePoly::var(f, Var::y(2 * i)));
            const Elem two_n = detail::int_elem(*f, 1L << n);

            std::map<Var, GElem> gens;
            std::vector<int> all;
            for (int i = 1; i <= 2 * n; ++i) {
                gens.emplace(Var::y(i), GElem::gen(f, 2 * n, i));
                all.push_back(i);
            }
            t.check(evaluate_unchecked(br, gens, f, 2 * n) == detail::blade_of(f, 2 * n, all, two_n),
                    "brackets on generators, p=" + std::to_string(p) + " n=" + std::to_string(n));

            const int N = 6 * n;
            std::map<Var, GElem> shifted;
            std::vector<int> heads;
            for (int j = 1; j <= 2 * n; ++j) {
                const int b = 3 * (j - 1);
                shifted.emplace(Var::y(j), GElem::gen(f, N, b + 1) + GElem::gen(f, N, b + 2) * GElem::gen(f, N, b + 3));
                heads.push_back(b + 1);
            }
            t.check(evaluate_unchecked(br, shifted, f, N) == detail::blade_of(f, N, heads, two_n),
                    "brackets on shifted pairs, p=" + std::to_string(p) + " n=" + std::to_string(n));
        }
        for (int k = 1; k < p; ++k) {
            const FreePoly g = FreePoly::var(f, Var::y(1)).pow(static_cast<unsigned>(k));
            long fact = 1;
            for (int i = 2; i <= k; ++i) fact *= i;
            std::vector<int> idx(static_cast<std::size_t>(2 * k));
            std::iota(idx.begin(), idx.end(), 1);
            const Elem kf = detail::int_elem(*f, fact);

            GElem a = GElem::zero(f, 2 * k + 1);
            for (int i = 1; i <= k; ++i) a = a + GElem::gen(f, 2 * k + 1, 2 * i - 1) * GElem::gen(f, 2 * k + 1, 2 * i);
            const auto expected = detail::blade_of(f, 2 * k + 1, idx, kf);
            t.check(evaluate_unchecked(g, {{Var::y(1), a}}, f, 2 * k + 1) == expected,
                    "power of pair sum, p=" + std::to_string(p) + " k=" + std::to_string(k));
            const GElem b = a + GElem::gen(f, 2 * k + 1, 2 * k + 1);
            t.check(evaluate_unchecked(g, {{Var::y(1), b}}, f, 2 * k + 1).dom() == expected,
                    "dominant part with odd tail, p=" + std::to_string(p) + " k=" + std::to_string(k));
        }
    }
    t.info(std::to_string(t.checks()) + " exact evaluations");
    return o;
}

inline Outcome characteristic_identities() {
    Outcome o{2, "characteristic p identities"};
    detail::Tally t(o);
    Rng rng(2002);
    const int n = 8;
    for (auto f : {make_field(3), make_field(3, 2)}) {
        const int p = f->p();
        const std::string tag = " over " + detail::field_name(*f);
        const FreePoly sp = detail::standard_poly(f, p, true), lin = detail::standard_poly(f, p, false);
        int bad_std = 0, bad_lin = 0;
        for (int i = 0; i < 200; ++i) {
            std::map<Var, GElem> xs;
            for (int j = 1; j <= p; ++j) xs.emplace(Var::y(j), random_element(f, n, rng, false));
            bad_std += !evaluate_unchecked(sp, xs, f, n).is_zero();
            bad_lin += !evaluate_unchecked(lin, xs, f, n).is_zero();
        }
        if (bad_std) t.fail("standard polynomial nonzero on " + detail::fmt_count(bad_std, 200) + " tuples" + tag);
        t.info("unsigned linearization of x^p nonzero on " + detail::fmt_count(bad_lin, 200) + " tuples" + tag);

        int bad = 0;
        for (int i = 0; i < 200; ++i) bad += !random_element(f, n, rng, false).pow(static_cast<unsigned>(p)).is_zero();
        if (bad) t.fail("g^p nonzero on " + detail::fmt_count(bad, 200) + tag);

        bad = 0;
        for (int i = 0; i < 200; ++i) {
            const Elem alpha = static_cast<Elem>(uniform(rng, 0, f->q() - 1));
            const GElem a = GElem::scalar(f, n, alpha) + random_element(f, n, rng, false);
            bad += a.pow(static_cast<unsigned>(p)) != GElem::scalar(f, n, f->pow(alpha, p));
        }
        if (bad) t.fail("(alpha+a)^p != alpha^p on " + detail::fmt_count(bad, 200) + tag);

        bad = 0;
        const auto pq = static_cast<unsigned long long>(p) * static_cast<unsigned long long>(f->q());
        for (int i = 0; i < 500; ++i) {
            const GElem x = random_element(f, n, rng);
            bad += x.pow(pq) != x.pow(static_cast<unsigned long long>(p));
        }
        if (bad) t.fail("x^pq != x^p on " + detail::fmt_count(bad, 500) + tag);
    }
    return o;
}

inline Outcome basis_membership() {
    Outcome o{3, "basis membership"};
    detail::Tally t(o);
    int exhaustive = 0, sampled = 0;
    for (int p : {3, 5}) {
        auto f = make_field(p);
        std::vector<IdealSpec> specs{IdealSpec::i1(f), IdealSpec::i2(f)};
        for (int k = 0; k <= 2; ++k) specs.push_back(IdealSpec::i3(f, k));
        for (int k = 1; k <= 3; ++k) specs.push_back(IdealSpec::i4(f, k));
        for (const auto& spec : specs)
            for (const auto& g : gen_ideal_basis(spec)) {
                CheckConfig cfg;
                cfg.grading = spec.grading();
                cfg.n = 3;
                cfg.mode = CheckConfig::Mode::Exhaustive;
                cfg.max_wt = 3;
                auto r = check_identity(g.poly, cfg);
                if (r.verdict == CheckReport::Verdict::Inconclusive) {
                    cfg.n = 10;
                    cfg.mode = CheckConfig::Mode::Random;
                    cfg.max_wt = -1;
                    cfg.trials = 500;
                    cfg.seed = 3003;
                    r = check_identity(g.poly, cfg);
                    ++sampled;
                } else {
                    ++exhaustive;
                }
                t.check(r.verdict == CheckReport::Verdict::Holds,
                        spec.name() + " " + g.name + " over GF(" + std::to_string(p) + "): " + verdict_name(r.verdict));
            }
    }
    t.info(std::to_string(exhaustive) + " generators exhaustive in G_3, " + std::to_string(sampled) +
           " sampled in G_10");
    return o;
}

inline Outcome reduction_soundness() {
    Outcome o{4, "reduction soundness"};
    detail::Tally t(o);
    auto f = make_field(3);
    Rng rng(4004);
    const int n = 10;
    int polys = 0, gens = 0;
    for (const auto& spec : detail::reduction_specs(f)) {
        const auto g = spec.grading();
        HomogeneousSpan even(f, g, 0, n, 6), odd(f, g, 1, n, 6);
        int bad = 0;
        for (int i = 0; i < 200; ++i) {
            const FreePoly poly = detail::corpus_poly(f, rng);
            const FreePoly back = expand(reduce(poly, spec));
            const auto vars = poly.variables();
            ++polys;
            for (int a = 0; a < 100; ++a) {
                std::map<Var, GElem> vals;
                for (const auto& v : vars) vals.emplace(v, v.odd() ? odd.random(rng) : even.random(rng));
                if (evaluate_unchecked(poly, vals, f, n) != evaluate_unchecked(back, vals, f, n)) {
                    ++bad;
                    t.fail(spec.name() + " changes the value of " + to_string(poly));
                    break;
                }
            }
        }
        int gbad = 0;
        for (const auto& gen : gen_ideal_basis(spec)) {
            ++gens;
            const auto cf = reduce(gen.poly, spec);
            if (!cf.pairs.empty()) {
                ++gbad;
                t.fail(spec.name() + " generator " + gen.name + " reduces to " + to_string(cf));
            }
            for (int i = 0; i < 50; ++i) {
                const FreePoly inst = random_instance(gen.poly, rng);
                const auto ci = reduce(inst, spec);
                if (!ci.pairs.empty()) {
                    ++gbad;
                    t.fail(spec.name() + " instance of " + gen.name + " reduces to " + to_string(ci));
                }
            }
        }
        if (bad || gbad)
            t.info(spec.name() + ": " + std::to_string(bad) + " unsound, " + std::to_string(gbad) +
                   " nonzero generator reductions");
    }
    t.info(std::to_string(polys) + " polynomials, " + std::to_string(gens) + " generators with 50 instances each");
    return o;
}

inline Outcome class_conformance() {
    Outcome o{5, "class conformance"};
    detail::Tally t(o);
    auto f = make_field(3);
    Rng rng(4004);
    for (const auto& spec : detail::reduction_specs(f)) {
        int bad = 0, terms = 0;
        for (int i = 0; i < 200; ++i) {
            const FreePoly poly = detail::corpus_poly(f, rng);
            for (const auto& [c, u] : reduce(poly, spec).pairs) {
                ++terms;
                if (!in_canonical_class(u, spec)) {
                    ++bad;
                    t.fail(spec.name() + " outputs " + term_text(u) + " for " + to_string(poly));
                }
            }
        }
        t.info(spec.name() + ": " + detail::fmt_count(bad, terms) + " terms outside the class");
    }
    return o;
}

inline Outcome order_laws() {
    Outcome o{6, "order laws"};
    detail::Tally t(o);
    Rng rng(6006);
    const TermShapeLimits lim;
    for (int i = 0; i < 10000; ++i) {
        const auto u = random_term(rng, lim), v = i % 7 ? random_term(rng, lim) : u;
        const auto a = ss_compare(u, v), b = ss_compare(v, u);
        t.check((a < 0) == (b > 0) && (a == 0) == (b == 0), "antisymmetry " + term_text(u) + " / " + term_text(v));
        t.check((a == 0) == (u == v), "trichotomy " + term_text(u) + " / " + term_text(v));
    }
    for (int i = 0; i < 10000; ++i) {
        std::vector<PrTerm> x{random_term(rng, lim), random_term(rng, lim), random_term(rng, lim)};
        std::sort(x.begin(), x.end(), [](const PrTerm& a, const PrTerm& b) { return ss_compare(a, b) < 0; });
        const bool ok = ss_compare(x[0], x[1]) <= 0 && ss_compare(x[1], x[2]) <= 0 && ss_compare(x[0], x[2]) <= 0;
        t.check(ok, "transitivity " + term_text(x[0]) + " / " + term_text(x[1]) + " / " + term_text(x[2]));
    }
    t.info(std::to_string(t.checks()) + " comparisons checked");
    return o;
}

inline Outcome exchange_relation() {
    Outcome o{7, "exchange relation"};
    detail::Tally t(o);
    for (int p : {3, 5}) {
        auto f = make_field(p);
        const auto spec = IdealSpec::i2(f);
        int plus_bad = 0;
        for (int mask = 0; mask < 16; ++mask) {
            std::vector<FreePoly> x;
            std::string pattern;
            for (int i = 0; i < 4; ++i) {
                const bool odd = mask >> i & 1;
                x.push_back(FreePoly::var(f, odd ? Var::z(i + 1) : Var::y(i + 1)));
                pattern += odd ? 'z' : 'y';
            }
            const FreePoly a = commutator(x[0], x[1]) * commutator(x[2], x[3]);
            const FreePoly b = commutator(x[0], x[2]) * commutator(x[1], x[3]);
            const auto minus = reduce(a - b, spec);
            t.check(minus.pairs.empty(), "difference " + pattern + " over GF(" + std::to_string(p) +
                                             ") reduces to " + to_string(minus));
            plus_bad += !reduce(a + b, spec).pairs.empty();
        }
        t.info("sum form nonzero for " + detail::fmt_count(plus_bad, 16) + " patterns over GF(" + std::to_string(p) +
               ")");
    }
    return o;
}

inline Outcome ppoly_nonvanishing() {
    Outcome o{8, "p-polynomial nonvanishing"};
    detail::Tally t(o);
    Rng rng(8008);
    for (auto f : {make_field(3), make_field(3, 2)}) {
        for (int i = 0; i < 100; ++i) {
            const FreePoly poly = random_ppoly(f, rng, 2);
            const auto w = scalar_witness(poly);
            t.check(w && evaluate_scalar(poly, *w) != 0, "no scalar point for " + to_string(poly));
        }
        const auto y = FreePoly::var(f, Var::y(1));
        const auto zero_fn = y.pow(static_cast<unsigned>(f->p() * f->q())) - y.pow(static_cast<unsigned>(f->p()));
        t.check(!scalar_witness(zero_fn), "scalar point found for y^pq - y^p over " + detail::field_name(*f));
    }
    return o;
}

inline Outcome witness_adequacy() {
    Outcome o{9, "witness adequacy"};
    detail::Tally t(o);
    Rng rng(9009);
    const TermShapeLimits lim;
    const std::vector<std::string> cases{"can", "inf", "kstar:1", "kstar:2", "k1:1", "k1:2", "k2:1", "k2:2"};
    for (int p : {3, 5}) {
        auto f = make_field(p);
        for (const auto& name : cases) {
            const auto c = parse_case(name);
            int done = 0;
            for (long tries = 0; done < 100 && tries < 1000000; ++tries) {
                const auto u = random_term(rng, lim);
                if (!in_case_class(u, c, p)) continue;
                ++done;
                const auto a = build_witness(u, c, f);
                const auto d = certify_dominant(u, a, f);
                t.check(d.nonzero && std::popcount(d.dom_support) == std::popcount(expected_dom_support(u, c)),
                        name + " p=" + std::to_string(p) + " " + term_text(u));
            }
            t.check(done == 100, "only " + std::to_string(done) + " terms sampled for " + name);
        }
    }
    t.info(std::to_string(t.checks()) + " witnesses certified");
    return o;
}

// The in-process half of criterion 10.
inline Outcome cli_roundtrips() {
    Outcome o{10, "parse/print round trip and reduce fixpoint"};
    detail::Tally t(o);
    Rng rng(10010);
    for (int i = 0; i < 1000; ++i) {
        auto f = i % 2 ? make_field(3, 2) : make_field(5);
        const FreePoly poly = random_poly(f, rng, PolyShape{3, 3, 6, 7});
        t.check(parse_poly(to_string(poly), f) == poly, "round trip of " + to_string(poly));
    }
    auto f = make_field(3);
    const auto specs = detail::reduction_specs(f);
    for (int i = 0; i < 200; ++i) {
        const auto& spec = specs[static_cast<std::size_t>(i) % specs.size()];
        const auto cf = reduce(detail::corpus_poly(f, rng), spec);
        t.check(reduce(parse_poly(to_string(cf), f), spec) == cf, spec.name() + " fixpoint of " + to_string(cf));
    }
    return o;
}

struct Suite {
    int id;
    std::function<Outcome()> run;
    double limit_s = 0;
};

inline std::vector<Suite> suites() {
    return {{1, explicit_evaluations, 1},   {2, characteristic_identities, 30}, {3, basis_membership, 300},
            {4, reduction_soundness, 600}, {5, class_conformance},              {6, order_laws, 5},
            {7, exchange_relation},        {8, ppoly_nonvanishing},             {9, witness_adequacy, 120},
            {10, cli_roundtrips}};
}

inline Outcome timed(const Suite& s) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = s.run();
    } catch (const std::exception& e) {
        o = Outcome{s.id, "suite " + std::to_string(s.id), false, {std::string("error: ") + e.what()}};
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s.limit_s > 0 && o.seconds > s.limit_s) {
        o.pass = false;
        o.notes.push_back("FAIL runtime over the " + std::to_string(static_cast<int>(s.limit_s)) + " s limit");
    }
    return o;
}

inline std::string status_line(const Outcome& o) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", o.seconds);
    return std::string(o.pass ? "PASS" : "FAIL") + "  criterion " + std::to_string(o.id) + ": " + o.title + " (" +
           secs + " s)";
}

}  // namespace grassid::acceptance
