#pragma once

// Graded identity checking by substitution into G_n, scalar witnesses for
// p-polynomials, and the witness substitutions for canonical terms.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "grassid/canon.hpp"
#include "grassid/freealg.hpp"
#include "grassid/grassmann.hpp"
#include "grassid/text.hpp"

namespace grassid {

struct CheckConfig {
    enum class Mode { Exhaustive, Random };
    GradingSpec grading;
    int n = 6;
    Mode mode = Mode::Random;
    int max_wt = -1;  // -1: min(n, 6) for random, n for exhaustive
    int trials = 100;
    unsigned long long seed = 1;
    unsigned long long budget = 10'000'000ULL;
    int jobs = 1;

    int effective_max_wt() const {
        if (max_wt >= 0) return std::min(max_wt, n);
        return mode == Mode::Random ? std::min(n, 6) : n;
    }
};

struct CheckReport {
    enum class Verdict { Holds, Fails, Inconclusive };
    Verdict verdict = Verdict::Holds;
    unsigned long long evaluations = 0;
    std::optional<GAssignment> assignment;  // set when Fails
    std::optional<GElem> value;
    std::string note;
};

inline std::string verdict_name(CheckReport::Verdict v) {
    switch (v) {
        case CheckReport::Verdict::Holds: return "Holds";
        case CheckReport::Verdict::Fails: return "Fails";
        case CheckReport::Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace detail {

inline std::vector<HomogeneousSpan> spans_for(const std::set<Var>& vars, const FieldPtr& f,
                                              const CheckConfig& cfg) {
    std::vector<HomogeneousSpan> spans;
    for (const auto& v : vars) spans.emplace_back(f, cfg.grading, v.parity(), cfg.n, cfg.effective_max_wt());
    return spans;
}

inline CheckReport fails(const GradingSpec& g, const std::set<Var>& vars, std::vector<GElem> vals,
                         GElem value, unsigned long long evals) {
    CheckReport r;
    r.verdict = CheckReport::Verdict::Fails;
    r.evaluations = evals;
    GAssignment a{g, {}};
    std::size_t i = 0;
    for (const auto& v : vars) a.values.emplace(v, std::move(vals[i++]));
    r.assignment = std::move(a);
    r.value = std::move(value);
    return r;
}

inline CheckReport check_exhaustive(const FreePoly& f, const CheckConfig& cfg) {
    const auto vars = f.variables();
    const auto& field = f.field();
    const auto spans = spans_for(vars, field, cfg);
    std::vector<unsigned long long> radix;
    unsigned long long total = 1;
    for (const auto& s : spans) {
        auto c = s.count(cfg.budget);
        if (!c || total > cfg.budget / *c) {
            CheckReport r;
            r.verdict = CheckReport::Verdict::Inconclusive;
            r.note = "exhaustive enumeration exceeds the budget of " + std::to_string(cfg.budget) +
                     " evaluations";
            return r;
        }
        radix.push_back(*c);
        total *= *c;
    }
    std::vector<unsigned long long> digit(spans.size(), 0);
    std::vector<GElem> vals;
    for (const auto& s : spans) vals.push_back(s.element(0));
    std::map<Var, GElem> values;
    for (unsigned long long count = 0; count < total; ++count) {
        values.clear();
        std::size_t i = 0;
        for (const auto& v : vars) values.emplace(v, vals[i++]);
        GElem val = evaluate_unchecked(f, values, field, cfg.n);
        if (!val.is_zero()) return fails(cfg.grading, vars, vals, std::move(val), count + 1);
        for (std::size_t j = digit.size(); j-- > 0;) {
            if (++digit[j] < radix[j]) {
                vals[j] = spans[j].element(digit[j]);
                break;
            }
            digit[j] = 0;
            vals[j] = spans[j].element(0);
        }
    }
    CheckReport r;
    r.evaluations = total;
    return r;
}

struct TrialOutcome {
    long long first_failure = -1;
    std::vector<GElem> vals;
    std::optional<GElem> value;
};

inline std::vector<GElem> random_values(const std::vector<HomogeneousSpan>& spans, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::vector<GElem> vals;
    for (const auto& s : spans) vals.push_back(s.random(rng));
    return vals;
}

inline CheckReport check_random(const FreePoly& f, const CheckConfig& cfg) {
    if (cfg.trials < 1) throw Error("trials must be >= 1");
    if (static_cast<unsigned long long>(cfg.trials) > cfg.budget) {
        CheckReport r;
        r.verdict = CheckReport::Verdict::Inconclusive;
        r.note = "trial count exceeds the budget";
        return r;
    }
    const auto vars = f.variables();
    const auto& field = f.field();
    const auto spans = spans_for(vars, field, cfg);
    const int jobs = std::max(1, std::min(cfg.jobs, cfg.trials));
    std::vector<TrialOutcome> out(static_cast<std::size_t>(jobs));
    auto work = [&](int job) {
        TrialOutcome& o = out[static_cast<std::size_t>(job)];
        for (int i = job; i < cfg.trials; i += jobs) {
            auto vals = random_values(spans, cfg.seed + static_cast<unsigned long long>(i));
            std::map<Var, GElem> values;
            std::size_t j = 0;
            for (const auto& v : vars) values.emplace(v, vals[j++]);
            GElem val = evaluate_unchecked(f, values, field, cfg.n);
            if (!val.is_zero()) {
                o = {i, std::move(vals), std::move(val)};
                return;
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    const TrialOutcome* best = nullptr;
    for (const auto& o : out)
        if (o.first_failure >= 0 && (!best || o.first_failure < best->first_failure)) best = &o;
    if (best)
        return fails(cfg.grading, vars, best->vals, *best->value,
                     static_cast<unsigned long long>(best->first_failure) + 1);
    CheckReport r;
    r.evaluations = static_cast<unsigned long long>(cfg.trials);
    return r;
}

}  // namespace detail

inline CheckReport check_identity(const FreePoly& f, const CheckConfig& cfg) {
    if (cfg.n < 1 || cfg.n > kMaxTruncation) throw Error("truncation out of range");
    if (f.variables().empty()) {
        CheckReport r;
        r.evaluations = 1;
        if (!f.is_zero()) {
            r.verdict = CheckReport::Verdict::Fails;
            r.assignment = GAssignment{cfg.grading, {}};
            r.value = evaluate_unchecked(f, {}, f.field(), cfg.n);
        }
        return r;
    }
    return cfg.mode == CheckConfig::Mode::Exhaustive ? detail::check_exhaustive(f, cfg)
                                                     : detail::check_random(f, cfg);
}

// Trial i of a random check uses the values drawn from seed + i.
inline GAssignment random_trial_assignment(const FreePoly& f, const CheckConfig& cfg, int trial) {
    const auto vars = f.variables();
    const auto vals = detail::random_values(detail::spans_for(vars, f.field(), cfg),
                                            cfg.seed + static_cast<unsigned long long>(trial));
    GAssignment a{cfg.grading, {}};
    std::size_t i = 0;
    for (const auto& v : vars) a.values.emplace(v, vals[i++]);
    return a;
}

inline std::string report_text(const CheckReport& r) {
    std::string out = verdict_name(r.verdict) + " after " + std::to_string(r.evaluations) + " evaluations\n";
    if (!r.note.empty()) out += "  " + r.note + "\n";
    if (r.assignment)
        for (const auto& [v, g] : r.assignment->values) out += "  " + v.name() + " = " + to_string(g) + "\n";
    if (r.value) out += "  value = " + to_string(*r.value) + "\n";
    return out;
}

inline std::string report_kv(const CheckReport& r) {
    std::string out = "verdict=" + verdict_name(r.verdict) + "\n";
    out += "evaluations=" + std::to_string(r.evaluations) + "\n";
    if (!r.note.empty()) out += "note=" + r.note + "\n";
    if (r.assignment) {
        out += "grading=" + r.assignment->grading.name() + "\n";
        for (const auto& [v, g] : r.assignment->values) out += "witness." + v.name() + "=" + to_string(g) + "\n";
    }
    if (r.value) out += "value=" + to_string(*r.value) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Scalar witnesses

using ScalarPoint = std::map<Var, Elem>;

inline Elem evaluate_scalar(const FreePoly& f, const ScalarPoint& at) {
    const Field& F = *f.field();
    Elem acc = 0;
    for (const auto& [w, c] : f.terms()) {
        Elem t = c;
        for (const auto& v : w) t = F.mul(t, at.at(v));
        acc = F.add(acc, t);
    }
    return acc;
}

// Searches F^n in mixed-radix order for a point where f is nonzero.
inline std::optional<ScalarPoint> scalar_witness(const FreePoly& f, int max_vars = 4) {
    const auto vars = f.variables();
    for (const auto& v : vars)
        if (v.odd()) throw Error("scalar substitution needs even variables, got " + v.name());
    if (static_cast<int>(vars.size()) > max_vars)
        throw Error("scalar search over " + std::to_string(vars.size()) + " variables exceeds the limit of " +
                    std::to_string(max_vars));
    const auto q = static_cast<unsigned long long>(f.field()->q());
    unsigned long long total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= q;
    ScalarPoint at;
    for (unsigned long long idx = 0; idx < total; ++idx) {
        unsigned long long rest = idx;
        for (const auto& v : vars) {
            at[v] = static_cast<Elem>(rest % q);
            rest /= q;
        }
        if (evaluate_scalar(f, at) != 0) return at;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Witness substitutions

struct TheoremCase {
    enum class Kind { Can, Inf, KStar, KCase1, KCase2 };
    Kind kind = Kind::Can;
    int k = 0;

    GradingSpec grading() const {
        switch (kind) {
            case Kind::Can: return GradingSpec::canonical();
            case Kind::Inf: return GradingSpec::alternating();
            case Kind::KStar: return GradingSpec::first_k_star(k);
            case Kind::KCase1:
            case Kind::KCase2: return GradingSpec::first_k(k);
        }
        return {};
    }

    std::string name() const {
        switch (kind) {
            case Kind::Can: return "can";
            case Kind::Inf: return "inf";
            case Kind::KStar: return "kstar:" + std::to_string(k);
            case Kind::KCase1: return "k1:" + std::to_string(k);
            case Kind::KCase2: return "k2:" + std::to_string(k);
        }
        return "?";
    }
};

inline TheoremCase parse_case(const std::string& s) {
    if (s == "can") return {TheoremCase::Kind::Can, 0};
    if (s == "inf") return {TheoremCase::Kind::Inf, 0};
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        const std::string head = s.substr(0, colon);
        int k = -1;
        try {
            k = std::stoi(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error("bad case: " + s);
        }
        if (head == "kstar" && k >= 0) return {TheoremCase::Kind::KStar, k};
        if (head == "k1" && k >= 1) return {TheoremCase::Kind::KCase1, k};
        if (head == "k2" && k >= 1) return {TheoremCase::Kind::KCase2, k};
    }
    throw Error("bad case '" + s + "': expected can, inf, kstar:<k>, k1:<k> or k2:<k>");
}

// A term relabelled as y_1..y_l1, z_1..z_l2 with y_1..y_n1 only in beg,
// y_{n1+1}..y_n2 in beg and psi, the rest only in psi; likewise for z with
// m1, m2, l2.
struct TermShape {
    std::vector<Var> y, z;  // y[j-1] plays y_j
    std::vector<int> a, b;  // a[j-1] = a_j for j <= n2
    int n1 = 0, n2 = 0, l1 = 0, m1 = 0, m2 = 0, l2 = 0;

    int A(int j) const {
        int s = 0;
        for (int i = 0; i < j; ++i) s += a[static_cast<std::size_t>(i)];
        return s;
    }
    int B(int j) const {
        int s = 0;
        for (int i = 0; i < j; ++i) s += b[static_cast<std::size_t>(i)];
        return s;
    }
};

inline TermShape term_shape(const PrTerm& u) {
    TermShape sh;
    std::vector<Var> yb, yboth, yp, zb, zboth, zp;
    for (const auto& [v, e] : u.beg) {
        auto& bucket = v.odd() ? (u.in_psi(v) ? zboth : zb) : (u.in_psi(v) ? yboth : yb);
        bucket.push_back(v);
    }
    for (const auto& v : u.psi)
        if (u.exponent(v) == 0) (v.odd() ? zp : yp).push_back(v);
    auto join = [](std::vector<Var>& out, const std::vector<Var>& part) {
        out.insert(out.end(), part.begin(), part.end());
    };
    join(sh.y, yb), join(sh.y, yboth), join(sh.y, yp);
    join(sh.z, zb), join(sh.z, zboth), join(sh.z, zp);
    sh.n1 = static_cast<int>(yb.size());
    sh.n2 = sh.n1 + static_cast<int>(yboth.size());
    sh.l1 = static_cast<int>(sh.y.size());
    sh.m1 = static_cast<int>(zb.size());
    sh.m2 = sh.m1 + static_cast<int>(zboth.size());
    sh.l2 = static_cast<int>(sh.z.size());
    for (int j = 0; j < sh.n2; ++j) sh.a.push_back(u.exponent(sh.y[static_cast<std::size_t>(j)]));
    for (int j = 0; j < sh.m2; ++j) sh.b.push_back(u.exponent(sh.z[static_cast<std::size_t>(j)]));
    return sh;
}

struct WitnessOffsets {
    int M = 0, Q = 0, T = 0, R = 0, S = 0;
};

inline WitnessOffsets witness_offsets(const TermShape& s, const TheoremCase& c) {
    WitnessOffsets o;
    const int k = c.k;
    switch (c.kind) {
        case TheoremCase::Kind::Can:
            break;
        case TheoremCase::Kind::Inf:
            o.M = 4 * s.A(s.n2) + 2 * (s.l1 - s.n1);
            break;
        case TheoremCase::Kind::KStar:
            o.Q = k + 2 * s.A(s.n2) + (s.l1 - s.n1);
            o.T = s.B(s.m2) + (s.m2 - s.m1);
            break;
        case TheoremCase::Kind::KCase1:
            o.R = k + 2 * s.A(s.n2);
            o.S = o.R + s.B(s.m2) + s.m2 - s.m1;
            break;
        case TheoremCase::Kind::KCase2:
            o.M = k + s.B(s.m2) + s.l2 - s.m1;
            break;
    }
    return o;
}

// alpha + sum of lone generators + sum of products e_i e_j.
struct ImageSpec {
    Elem scalar = 0;
    std::vector<int> lone;
    std::vector<std::pair<int, int>> pairs;

    int max_index() const {
        int m = 0;
        for (int i : lone) m = std::max(m, i);
        for (auto [i, j] : pairs) m = std::max({m, i, j});
        return m;
    }

    GElem build(const FieldPtr& f, int n) const {
        GElem g = GElem::scalar(f, n, scalar);
        for (int i : lone) g = g + GElem::gen(f, n, i);
        for (auto [i, j] : pairs) g = g + GElem::gen(f, n, i) * GElem::gen(f, n, j);
        return g;
    }
};

using WitnessLayout = std::map<Var, ImageSpec>;

inline bool in_case_class(const PrTerm& u, const TheoremCase& c, int p) {
    const SSFlags fl = ss_class(u, p, c.k);
    const TermStats st = term_stats(u);
    switch (c.kind) {
        case TheoremCase::Kind::Can: return fl.ss0;
        case TheoremCase::Kind::Inf: return fl.ss;
        case TheoremCase::Kind::KStar: return fl.ss && st.deg_z <= c.k;
        case TheoremCase::Kind::KCase1: return fl.ss3 && st.beg_z + st.psi_y <= c.k;
        case TheoremCase::Kind::KCase2: return fl.ss3 && st.beg_z + st.psi_y == c.k + 1;
    }
    return false;
}

namespace detail {

inline void add_pairs(ImageSpec& img, int lo, int hi, auto&& pair_of) {
    for (int l = lo; l <= hi; ++l) img.pairs.push_back(pair_of(l));
}

inline WitnessLayout layout_can(const TermShape& s, Elem alpha) {
    WitnessLayout out;
    for (int i = 1; i <= s.l1; ++i) out[s.y[i - 1]] = {alpha, {}, {{2 * i - 1, 2 * i}}};
    for (int j = 1; j <= s.l2; ++j) out[s.z[j - 1]] = {0, {2 * s.l1 + j}, {}};
    return out;
}

inline WitnessLayout layout_inf(const TermShape& s, const WitnessOffsets& o) {
    WitnessLayout out;
    const int M = o.M;
    for (int j = 1; j <= s.l1; ++j) {
        ImageSpec& img = out[s.y[j - 1]];
        if (j <= s.n1) {
            add_pairs(img, s.A(j - 1) + 1, s.A(j), [](int l) { return std::pair{4 * l - 2, 4 * l}; });
        } else if (j <= s.n2) {
            const int base = 4 * s.A(j - 1) + 2 * (j - s.n1);
            img.lone.push_back(base);
            add_pairs(img, 1, s.a[j - 1], [&](int l) { return std::pair{base + 4 * l - 2, base + 4 * l}; });
        } else {
            img.lone.push_back(4 * s.A(s.n2) + 2 * (j - s.n1));
        }
    }
    for (int j = 1; j <= s.l2; ++j) {
        ImageSpec& img = out[s.z[j - 1]];
        if (j <= s.m1) {
            add_pairs(img, s.B(j - 1) + 1, s.B(j), [&](int l) { return std::pair{2 * l - 1, M + 2 * l}; });
        } else if (j <= s.m2) {
            img.lone.push_back(2 * s.B(j - 1) + 2 * (j - s.m1) - 1);
            add_pairs(img, s.B(j - 1) + 1, s.B(j),
                      [&](int l) { return std::pair{2 * (l + j - s.m1) - 1, M + 2 * l}; });
        } else {
            img.lone.push_back(2 * s.B(s.m2) + 2 * (j - s.m1) - 1);
        }
    }
    return out;
}

inline WitnessLayout layout_kstar(const TermShape& s, const WitnessOffsets& o, int k) {
    WitnessLayout out;
    for (int j = 1; j <= s.l1; ++j) {
        ImageSpec& img = out[s.y[j - 1]];
        if (j <= s.n1) {
            add_pairs(img, s.A(j - 1) + 1, s.A(j), [&](int l) { return std::pair{k + 2 * l - 1, k + 2 * l}; });
        } else if (j <= s.n2) {
            const int base = k + 2 * s.A(j - 1) + (j - s.n1);
            img.lone.push_back(base);
            add_pairs(img, 1, s.a[j - 1], [&](int l) { return std::pair{base + 2 * l - 1, base + 2 * l}; });
        } else {
            img.lone.push_back(k + 2 * s.A(s.n2) + (j - s.n1));
        }
    }
    for (int j = 1; j <= s.l2; ++j) {
        ImageSpec& img = out[s.z[j - 1]];
        if (j <= s.m1) {
            add_pairs(img, s.B(j - 1) + 1, s.B(j), [&](int l) { return std::pair{l, o.Q + l}; });
        } else if (j <= s.m2) {
            img.lone.push_back(s.B(j - 1) + (j - s.m1));
            add_pairs(img, s.B(j - 1) + 1, s.B(j), [&](int l) { return std::pair{l + (j - s.m1), o.Q + l}; });
        } else {
            img.lone.push_back(o.T + (j - s.m2));
        }
    }
    return out;
}

inline WitnessLayout layout_case1(const TermShape& s, const WitnessOffsets& o, int k) {
    WitnessLayout out;
    const int L = s.l1 - s.n1;
    for (int j = 1; j <= s.l1; ++j) {
        ImageSpec& img = out[s.y[j - 1]];
        if (j > s.n1) img.lone.push_back(j - s.n1);
        if (j <= s.n2)
            add_pairs(img, s.A(j - 1) + 1, s.A(j), [&](int l) { return std::pair{k + 2 * l - 1, k + 2 * l}; });
    }
    for (int j = 1; j <= s.l2; ++j) {
        ImageSpec& img = out[s.z[j - 1]];
        if (j <= s.m1) {
            add_pairs(img, s.B(j - 1) + 1, s.B(j), [&](int l) { return std::pair{o.R + l, L + l}; });
        } else if (j <= s.m2) {
            img.lone.push_back(o.R + s.B(j - 1) + (j - s.m1));
            add_pairs(img, s.B(j - 1) + 1, s.B(j), [&](int l) { return std::pair{o.R + (j - s.m1) + l, L + l}; });
        } else {
            img.lone.push_back(o.S + (j - s.m2));
        }
    }
    return out;
}

inline WitnessLayout layout_case2(const TermShape& s, const WitnessOffsets& o, int k) {
    WitnessLayout out;
    for (int j = 1; j <= s.l2; ++j) {
        ImageSpec& img = out[s.z[j - 1]];
        if (j == 1) {
            img.lone.push_back(k + 1);
            add_pairs(img, 1, s.b[0] - 1, [&](int l) { return std::pair{k + l + 1, l}; });
        } else if (j <= s.m1) {
            add_pairs(img, s.B(j - 1), s.B(j) - 1, [&](int l) { return std::pair{k + l + 1, l}; });
        } else if (j <= s.m2) {
            const int base = k + s.B(j - 1) + (j - s.m1);
            img.lone.push_back(base);
            add_pairs(img, 1, s.b[j - 1], [&](int l) { return std::pair{base + l, l + s.B(j - 1) - 1}; });
        } else {
            img.lone.push_back(k + s.B(s.m2) + (j - s.m1));
        }
    }
    for (int j = 1; j <= s.l1; ++j) {
        ImageSpec& img = out[s.y[j - 1]];
        if (j > s.n1) img.lone.push_back(s.B(s.m2) + (j - s.n1 - 1));
        if (j <= s.n2)
            add_pairs(img, s.A(j - 1) + 1, s.A(j), [&](int l) { return std::pair{o.M + 2 * l - 1, o.M + 2 * l}; });
    }
    return out;
}

inline Mask index_range(int lo, int hi, int step = 1) {
    Mask m = 0;
    for (int i = lo; i <= hi; i += step) m |= Mask{1} << (i - 1);
    return m;
}

}  // namespace detail

inline WitnessLayout witness_layout(const PrTerm& u, const TheoremCase& c, Elem alpha = 1) {
    const TermShape s = term_shape(u);
    const WitnessOffsets o = witness_offsets(s, c);
    switch (c.kind) {
        case TheoremCase::Kind::Can: return detail::layout_can(s, alpha);
        case TheoremCase::Kind::Inf: return detail::layout_inf(s, o);
        case TheoremCase::Kind::KStar: return detail::layout_kstar(s, o, c.k);
        case TheoremCase::Kind::KCase1: return detail::layout_case1(s, o, c.k);
        case TheoremCase::Kind::KCase2: return detail::layout_case2(s, o, c.k);
    }
    return {};
}

// The support of the dominant part claimed for the leading term.
inline Mask expected_dom_support(const PrTerm& u, const TheoremCase& c) {
    const TermShape s = term_shape(u);
    const WitnessOffsets o = witness_offsets(s, c);
    const int Bm = s.B(s.m2), An = s.A(s.n2);
    using detail::index_range;
    switch (c.kind) {
        case TheoremCase::Kind::Can:
            return index_range(1, 2 * s.l1 + s.l2);
        case TheoremCase::Kind::Inf:
            return index_range(1, 2 * Bm + 2 * (s.l2 - s.m1) - 1, 2) | index_range(2, o.M + 2 * Bm, 2);
        case TheoremCase::Kind::KStar:
            return index_range(1, o.T + (s.l2 - s.m2)) | index_range(c.k + 1, o.Q + Bm);
        case TheoremCase::Kind::KCase1:
            return index_range(1, s.l1 - s.n1 + Bm) | index_range(c.k + 1, o.S + (s.l2 - s.m2));
        case TheoremCase::Kind::KCase2:
            return index_range(1, Bm + s.l1 - s.n1 - 1) | index_range(c.k + 1, o.M + 2 * An);
    }
    return 0;
}

inline GAssignment build_witness(const PrTerm& u, const TheoremCase& c, const FieldPtr& f, Elem alpha = 1) {
    if (!in_case_class(u, c, f->p()))
        throw Error("term " + term_text(u) + " is not in the class of case " + c.name());
    const WitnessLayout lay = witness_layout(u, c, alpha);
    int n = 1;
    for (const auto& [v, img] : lay) n = std::max(n, img.max_index());
    if (n > kMaxTruncation) throw Error("witness needs more than 64 generators");
    GAssignment a{c.grading(), {}};
    for (const auto& [v, img] : lay) a.values.emplace(v, img.build(f, n));
    check_assignment(a);
    return a;
}

struct DominantReport {
    GElem value;
    Mask dom_support = 0;
    bool nonzero = false;
};

inline DominantReport certify_dominant(const PrTerm& u, const GAssignment& a, const FieldPtr& f) {
    int n = 1;
    for (const auto& [v, g] : a.values) n = g.truncation();
    for (const auto& v : term_stats(u).vars)
        if (!a.values.count(v)) throw Error("no value assigned to " + v.name());
    GElem val = evaluate_unchecked(expand(u, f), a.values, f, n);
    DominantReport r{val, val.dom().supp(), !val.is_zero()};
    return r;
}

}  // namespace grassid
