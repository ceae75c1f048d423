#pragma once

// Rewriting of free polynomials to canonical form modulo I1, I2, I3(k), I4(k).

#include <bit>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grassid/canon.hpp"

namespace grassid {

// word * [psi0,psi1][psi2,psi3]... with a coefficient; words need not be sorted.
struct RawTerm {
    Word word;
    std::vector<Var> psi;
    Elem coeff = 1;
};

struct TraceStep {
    std::string rule;
    RawTerm before;
    std::vector<RawTerm> after;
};

using Trace = std::vector<TraceStep>;

inline std::string raw_body(const Word& w, const std::vector<Var>& psi) {
    std::string out = w.empty() ? "" : word_text(w);
    for (std::size_t i = 0; i + 1 < psi.size(); i += 2)
        out += (out.empty() ? "" : "*") + ("[" + psi[i].name() + "," + psi[i + 1].name() + "]");
    return out.empty() ? "1" : out;
}

inline std::string to_string(const Field& f, const std::vector<RawTerm>& ts) {
    std::vector<std::pair<Elem, std::string>> parts;
    for (const auto& t : ts) parts.push_back({t.coeff, raw_body(t.word, t.psi)});
    return join_signed(f, parts);
}

inline std::string to_string(const Field& f, const TraceStep& s) {
    return s.rule + ": " + to_string(f, std::vector<RawTerm>{s.before}) + " -> " + to_string(f, s.after);
}

namespace detail {

using RawKey = std::pair<Word, std::vector<Var>>;
using RawState = std::map<RawKey, Elem>;

inline void add_to(const Field& f, RawState& s, const RawKey& k, Elem c) {
    if (c == 0) return;
    auto [it, inserted] = s.try_emplace(k, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (it->second == 0) s.erase(it);
    }
}

inline int count_odd(const Word& w) {
    int n = 0;
    for (const auto& v : w) n += v.odd();
    return n;
}

inline int count_odd(const RawKey& k) {
    int n = count_odd(k.first);
    for (const auto& v : k.second) n += v.odd();
    return n;
}

inline PrTerm to_term(const RawKey& k) { return PrTerm{run_lengths(k.first), k.second}; }

class Reducer {
public:
    static constexpr long kBudget = 1000000;

    Reducer(IdealSpec spec, Trace* trace) : spec_(std::move(spec)), f_(*spec_.field), trace_(trace) {}

    CanonicalForm run(const FreePoly& poly) {
        require_same_field(spec_.field, poly.field());
        RawState s;
        for (const auto& [w, c] : poly.terms()) add_to(f_, s, {w, {}}, c);
        if (spec_.which == IdealSpec::Which::I3) kill_many_odd(s);
        s = spec_.which == IdealSpec::Which::I1 ? straighten_commutative(s) : straighten(s);
        kill_odd_powers(s);
        if (spec_.which == IdealSpec::Which::I3) kill_many_odd(s);
        if (spec_.which == IdealSpec::Which::I4) rewrite_i4(s);
        reduce_even_powers(s);
        return assemble(s, spec_);
    }

    // Canonical form of a state whose terms are all sorted and reduced.
    static CanonicalForm assemble(const RawState& s, const IdealSpec& spec) {
        const Field& f = *spec.field;
        const int p = f.p();
        std::map<PrTerm, FreePoly> grouped;
        for (const auto& [key, c] : s) {
            Word ppart, rest;
            for (const auto& [v, e] : run_lengths(key.first)) {
                const int r = v.odd() ? e : e % p;
                if (v.odd() && e >= p) throw Error("unreduced odd power in final state");
                ppart.insert(ppart.end(), static_cast<std::size_t>(e - r), v);
                rest.insert(rest.end(), static_cast<std::size_t>(r), v);
            }
            auto it = grouped.try_emplace(PrTerm{run_lengths(rest), key.second}, spec.field).first;
            it->second.add_term(ppart, c);
        }
        CanonicalForm cf{spec, {}};
        for (auto& [u, c] : grouped)
            if (!c.is_zero()) cf.pairs.push_back({c, u});
        std::sort(cf.pairs.begin(), cf.pairs.end(),
                  [](const auto& a, const auto& b) { return ss_compare(a.second, b.second) > 0; });
        return cf;
    }

private:
    IdealSpec spec_;
    const Field& f_;
    Trace* trace_;
    long steps_ = 0;
    bool resolve_ = true;
    std::map<Word, std::vector<std::pair<RawKey, int>>> memo_;

    void tick() {
        if (++steps_ > kBudget) throw Error("reduction exceeded its step budget");
    }

    void record(const std::string& rule, const RawKey& k, Elem c, std::vector<RawTerm> after) {
        if (trace_) trace_->push_back({rule, {k.first, k.second, c}, std::move(after)});
    }

    void kill(RawState& s, const RawKey& k, const std::string& rule) {
        record(rule, k, s.at(k), {});
        s.erase(k);
    }

    void kill_many_odd(RawState& s) {
        std::vector<RawKey> dead;
        for (const auto& [k, c] : s)
            if (count_odd(k) >= spec_.k + 1) dead.push_back(k);
        for (const auto& k : dead) {
            tick();
            kill(s, k, "KILL-ZK");
        }
    }

    void kill_odd_powers(RawState& s) {
        std::vector<RawKey> dead;
        for (const auto& [k, c] : s)
            for (const auto& [v, e] : run_lengths(k.first))
                if (v.odd() && e >= f_.p()) {
                    dead.push_back(k);
                    break;
                }
        for (const auto& k : dead) {
            tick();
            kill(s, k, "KILL-ZP");
        }
    }

    // y^(p*s) with s >= q becomes y^(p*(s-q+1)).
    void reduce_even_powers(RawState& s) {
        const int p = f_.p(), q = f_.q();
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [k, c] : s) {
                Word w;
                bool hit = false;
                for (const auto& [v, e] : run_lengths(k.first)) {
                    int n = e;
                    if (!v.odd() && !hit && n / p >= q) {
                        n -= p * (q - 1);
                        hit = true;
                    }
                    w.insert(w.end(), static_cast<std::size_t>(n), v);
                }
                if (!hit) continue;
                tick();
                const RawKey from = k;
                const Elem coef = c;
                record("PPOW", from, coef, {{w, from.second, coef}});
                s.erase(from);
                add_to(f_, s, {w, from.second}, coef);
                changed = true;
                break;
            }
        }
    }

    // Modulo I1: even letters are central, odd letters anticommute.
    RawState straighten_commutative(const RawState& in) {
        RawState out;
        for (const auto& [k, c] : in) {
            if (!trace_) {
                Word evens, odds;
                for (const auto& v : k.first) (v.odd() ? odds : evens).push_back(v);
                std::sort(evens.begin(), evens.end());
                const int sign = sort_with_sign(odds);
                tick();
                if (sign == 0) continue;
                evens.insert(evens.end(), odds.begin(), odds.end());
                add_to(f_, out, {evens, {}}, sign > 0 ? c : f_.neg(c));
                continue;
            }
            Word w = k.first;
            Elem coef = c;
            bool dead = false;
            for (;;) {
                tick();
                std::size_t i = 0;
                while (i + 1 < w.size() && !(w[i + 1] < w[i])) ++i;
                if (i + 1 < w.size()) {
                    Word sw = w;
                    std::swap(sw[i], sw[i + 1]);
                    const bool anti = w[i].odd() && w[i + 1].odd();
                    const Elem nc = anti ? f_.neg(coef) : coef;
                    record(anti ? "ANTI-Z" : "COMM-Y", {w, {}}, coef, {{sw, {}, nc}});
                    w = sw;
                    coef = nc;
                    continue;
                }
                for (std::size_t j = 0; j + 1 < w.size(); ++j)
                    if (w[j].odd() && w[j] == w[j + 1]) dead = true;
                if (dead) record("KILL-ZZ", {w, {}}, coef, {});
                break;
            }
            if (!dead) add_to(f_, out, {w, {}}, coef);
        }
        return out;
    }

    static std::size_t first_descent(const Word& w) {
        std::size_t i = 0;
        while (i + 1 < w.size() && !(w[i + 1] < w[i])) ++i;
        return i;
    }

    // Normal form of a word modulo the triple commutator, coefficients mod p.
    const std::vector<std::pair<RawKey, int>>& normal_form(const Word& w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        tick();
        const int p = f_.p();
        std::map<RawKey, int> acc;
        const std::size_t i = first_descent(w);
        if (i + 1 >= w.size()) {
            acc[{w, {}}] = 1;
        } else {
            Word sw = w;
            std::swap(sw[i], sw[i + 1]);
            for (const auto& [k, c] : normal_form(sw)) acc[k] = (acc[k] + c) % p;
            Word cut = w;
            cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(i), cut.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            const auto inner = normal_form(cut);
            for (const auto& [k, c] : inner) {
                std::vector<Var> ps = k.second;
                ps.push_back(w[i]);
                ps.push_back(w[i + 1]);
                const int sign = sort_with_sign(ps);
                if (sign == 0) continue;
                auto& slot = acc[{k.first, ps}];
                slot = ((slot + sign * c) % p + p) % p;
            }
        }
        std::vector<std::pair<RawKey, int>> out;
        for (auto& [k, c] : acc)
            if (c) out.push_back({k, c});
        return memo_[w] = std::move(out);
    }

    // Modulo the triple commutator: sorted words times canonical bracket products.
    RawState straighten(const RawState& in) {
        RawState out;
        if (!trace_) {
            for (const auto& [k, c] : in)
                for (const auto& [nk, nc] : normal_form(k.first)) {
                    std::vector<Var> ps = k.second;
                    ps.insert(ps.end(), nk.second.begin(), nk.second.end());
                    const int sign = sort_with_sign(ps);
                    if (sign == 0) continue;
                    const Elem e = f_.mul(c, f_.from_int(sign * nc));
                    add_to(f_, out, {nk.first, ps}, e);
                }
            return out;
        }
        RawState work = in;
        while (!work.empty()) {
            tick();
            auto it = work.begin();
            const RawKey k = it->first;
            const Elem c = it->second;
            work.erase(it);
            const std::size_t i = first_descent(k.first);
            if (i + 1 >= k.first.size()) {
                add_to(f_, out, k, c);
                continue;
            }
            Word sw = k.first;
            std::swap(sw[i], sw[i + 1]);
            Word cut = k.first;
            cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(i), cut.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            std::vector<Var> ps = k.second;
            ps.push_back(k.first[i]);
            ps.push_back(k.first[i + 1]);
            const int sign = sort_with_sign(ps);
            std::vector<RawTerm> after{{sw, k.second, c}};
            if (sign != 0) after.push_back({cut, ps, sign > 0 ? c : f_.neg(c)});
            record("SWAP", k, c, after);
            for (const auto& t : after) add_to(f_, work, {t.word, t.psi}, t.coeff);
        }
        return out;
    }

    struct Shape {
        Word ybeg, zbeg;
        int psi_y = 0;
    };

    static Shape shape(const RawKey& k) {
        Shape sh;
        for (const auto& v : k.first) (v.odd() ? sh.zbeg : sh.ybeg).push_back(v);
        for (const auto& v : k.second) sh.psi_y += !v.odd();
        return sh;
    }

    Elem weight(int pairs) const { return gm_weight(f_, pairs); }

    static Word concat(Word a, const Word& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    // u = ybeg*zbeg*psi with deg_Z(beg) + deg_Y(psi) >= k+2: the last m odd
    // letters of beg times psi form an instance of g_m * psi.
    void split_gm(RawState& s, const RawKey& k) {
        const Shape sh = shape(k);
        const int m = spec_.k - sh.psi_y + 2;
        const int d = static_cast<int>(sh.zbeg.size());
        const Word rest(sh.zbeg.begin(), sh.zbeg.begin() + (d - m));
        const Word chosen(sh.zbeg.begin() + (d - m), sh.zbeg.end());
        const Elem lambda = s.at(k);
        std::vector<RawTerm> after;
        for (const auto& T : even_subsets(m)) {
            if (T.empty()) continue;
            Word lone;
            std::vector<Var> ps = k.second;
            for (int i : complement(T, m)) lone.push_back(chosen[i - 1]);
            for (int j : T) ps.push_back(chosen[j - 1]);
            const int sign = sort_with_sign(ps);
            if (sign == 0) continue;
            Elem c = f_.mul(f_.neg(lambda), weight(static_cast<int>(T.size()) / 2));
            if (sign < 0) c = f_.neg(c);
            after.push_back({concat(concat(sh.ybeg, rest), lone), ps, c});
        }
        record("GM-SPLIT", k, lambda, after);
        s.erase(k);
        for (const auto& t : after) add_to(f_, s, {t.word, t.psi}, t.coeff);
    }

    // u on the boundary deg_Z(beg) + deg_Y(psi) = k+1 with pr_z in psi.
    // Uses ybeg * [g_m(zbeg, c), x] * C, where psi = +-[c,x]*C.
    bool clear_boundary(RawState& s, const RawKey& k) {
        const Shape sh = shape(k);
        const Var c = sh.zbeg.front();
        std::optional<Var> x;
        for (const auto& v : k.second)
            if (v.odd() && v != c) {
                x = v;
                break;
            }
        if (!x)
            for (const auto& v : k.second)
                if (!v.odd()) {
                    x = v;
                    break;
                }
        if (!x) throw Error("boundary term without a bracket partner");
        std::vector<Var> C;
        for (const auto& v : k.second)
            if (v != c && v != *x) C.push_back(v);
        Word w = sh.zbeg;
        w.insert(std::upper_bound(w.begin(), w.end(), c), c);
        const int m = static_cast<int>(w.size());

        RawState rel;
        for (const auto& T : even_subsets(m)) {
            const Elem wt = weight(static_cast<int>(T.size()) / 2);
            const auto lone = complement(T, m);
            for (int i : lone) {
                Word zb;
                for (int j : lone)
                    if (j != i) zb.push_back(w[j - 1]);
                std::vector<Var> ps{w[i - 1], *x};
                for (int j : T) ps.push_back(w[j - 1]);
                ps.insert(ps.end(), C.begin(), C.end());
                const int sign = sort_with_sign(ps);
                if (sign == 0) continue;
                add_to(f_, rel, {concat(sh.ybeg, zb), ps}, sign > 0 ? wt : f_.neg(wt));
            }
        }
        auto self = rel.find(k);
        if (self == rel.end()) return false;
        const Elem lambda = s.at(k);
        const Elem factor = f_.neg(f_.mul(lambda, f_.inv(self->second)));
        std::vector<RawTerm> after;
        for (const auto& [rk, rc] : rel)
            if (rk != k) after.push_back({rk.first, rk.second, f_.mul(factor, rc)});
        record("BOUNDARY", k, lambda, after);
        s.erase(k);
        for (const auto& t : after) add_to(f_, s, {t.word, t.psi}, t.coeff);
        return true;
    }

    // Boundary terms whose pr_z has exponent p-1: premultiplied instances
    // ybeg * rest * g_m(chosen) * C with rest*chosen containing pr_z^p.
    bool clear_with_zero_power(RawState& s, const RawKey& k) {
        const Shape sh = shape(k);
        const Var c = sh.zbeg.front();
        std::optional<Var> x;
        for (const auto& v : k.second)
            if (v.odd() && v != c) {
                x = v;
                break;
            }
        if (!x) return false;
        std::vector<Var> C;
        for (const auto& v : k.second)
            if (v != c && v != *x) C.push_back(v);
        Word t = sh.zbeg;
        t.push_back(c);
        t.push_back(*x);
        std::sort(t.begin(), t.end());
        const int m = spec_.k - sh.psi_y + 2;
        const int n = static_cast<int>(t.size());
        if (m > n) return false;
        const FieldPtr& fp = spec_.field;
        FreePoly tail = FreePoly::one(fp);
        for (std::size_t i = 0; i + 1 < C.size(); i += 2)
            tail = tail * commutator(FreePoly::var(fp, C[i]), FreePoly::var(fp, C[i + 1]));
        std::set<Word> tried;
        for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
            if (std::popcount(bits) != m) continue;
            Word chosen, rest;
            for (int i = 0; i < n; ++i) (bits >> i & 1 ? chosen : rest).push_back(t[i]);
            if (!tried.insert(chosen).second) continue;
            const FreePoly rel = FreePoly::word(fp, concat(sh.ybeg, rest)) * gen_gm(fp, chosen) * tail;
            Reducer inner(spec_, nullptr);
            inner.resolve_ = false;
            RawState r = inner.normalize(rel);
            steps_ += inner.steps_;
            auto self = r.find(k);
            if (self == r.end()) continue;
            bool clean = true;
            for (const auto& [rk, rc] : r)
                if (rk != k && is_boundary_bad(rk)) clean = false;
            if (!clean) continue;
            const Elem lambda = s.at(k);
            const Elem factor = f_.neg(f_.mul(lambda, f_.inv(self->second)));
            std::vector<RawTerm> after;
            for (const auto& [rk, rc] : r)
                if (rk != k) after.push_back({rk.first, rk.second, f_.mul(factor, rc)});
            record("ZP-SPLIT", k, lambda, after);
            s.erase(k);
            for (const auto& a : after) add_to(f_, s, {a.word, a.psi}, a.coeff);
            return true;
        }
        return false;
    }

    bool is_boundary_bad(const RawKey& key) const {
        const Shape sh = shape(key);
        const int d = static_cast<int>(sh.zbeg.size());
        return d + sh.psi_y == spec_.k + 1 && d > 0 &&
               std::binary_search(key.second.begin(), key.second.end(), sh.zbeg.front());
    }

    // Straightened, killed and I4-rewritten state of a polynomial.
    RawState normalize(const FreePoly& poly) {
        RawState s;
        for (const auto& [w, c] : poly.terms()) add_to(f_, s, {w, {}}, c);
        s = straighten(s);
        kill_odd_powers(s);
        rewrite_i4(s);
        return s;
    }

    void rewrite_i4(RawState& s) {
        const int k = spec_.k, p = f_.p();
        std::set<RawKey> stuck;
        for (;;) {
            tick();
            const RawKey* pick = nullptr;
            int pick_d = -1;
            bool pick_boundary = false;
            const RawKey* dead = nullptr;
            std::string dead_rule;
            for (const auto& [key, c] : s) {
                const Shape sh = shape(key);
                for (const auto& [v, e] : run_lengths(key.first))
                    if (v.odd() && e >= p) {
                        dead = &key;
                        dead_rule = "KILL-ZP";
                    }
                if (!dead && sh.psi_y > k) {
                    dead = &key;
                    dead_rule = "KILL-YPSI";
                }
                if (dead) break;
                const int d = static_cast<int>(sh.zbeg.size());
                bool violating = false, boundary = false;
                if (d + sh.psi_y >= k + 2) {
                    violating = true;
                } else if (d + sh.psi_y == k + 1 && d > 0 &&
                           std::binary_search(key.second.begin(), key.second.end(), sh.zbeg.front())) {
                    violating = !stuck.count(key);
                    boundary = true;
                }
                if (violating && d > pick_d) {
                    pick = &key;
                    pick_d = d;
                    pick_boundary = boundary;
                }
            }
            if (dead) {
                kill(s, *dead, dead_rule);
                continue;
            }
            if (!pick) {
                bool progress = false;
                if (resolve_)
                    for (const auto& key : stuck)
                        if (s.count(key) && clear_with_zero_power(s, key)) progress = true;
                if (!progress) break;
                continue;
            }
            const RawKey key = *pick;
            if (!pick_boundary)
                split_gm(s, key);
            else if (!clear_boundary(s, key))
                stuck.insert(key);
        }
        if (resolve_) eliminate_boundary(s);
    }

    static Word letters(const RawKey& k) {
        Word w = concat(k.first, k.second);
        std::sort(w.begin(), w.end());
        return w;
    }

    bool on_boundary(const RawKey& k) const {
        const Shape sh = shape(k);
        const int d = static_cast<int>(sh.zbeg.size());
        return d > 0 && d + sh.psi_y == spec_.k + 1;
    }

    // ybeg * [g_m(zbeg, c), x] * C for every odd c in psi and partner x.
    std::vector<RawState> boundary_relations(const RawKey& k) {
        const Shape sh = shape(k);
        const FieldPtr& fp = spec_.field;
        const auto& psi = k.second;
        std::vector<RawState> out;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            if (!psi[i].odd()) continue;
            for (std::size_t j = 0; j < psi.size(); ++j) {
                if (j == i) continue;
                FreePoly tail = FreePoly::one(fp);
                std::vector<Var> C;
                for (std::size_t t = 0; t < psi.size(); ++t)
                    if (t != i && t != j) C.push_back(psi[t]);
                for (std::size_t t = 0; t + 1 < C.size(); t += 2)
                    tail = tail * commutator(FreePoly::var(fp, C[t]), FreePoly::var(fp, C[t + 1]));
                Word w = sh.zbeg;
                w.insert(std::upper_bound(w.begin(), w.end(), psi[i]), psi[i]);
                const FreePoly rel = FreePoly::word(fp, sh.ybeg) *
                                     commutator(gen_gm(fp, w), FreePoly::var(fp, psi[j])) * tail;
                Reducer inner(spec_, nullptr);
                inner.resolve_ = false;
                RawState r = inner.normalize(rel);
                steps_ += inner.steps_;
                if (!r.empty()) out.push_back(std::move(r));
            }
        }
        return out;
    }

    // Pivot preference: stuck boundary terms first, then the SS-largest.
    bool pivot_before(const RawKey& a, const RawKey& b) const {
        const bool ba = is_boundary_bad(a), bb = is_boundary_bad(b);
        if (ba != bb) return ba;
        return ss_compare(to_term(a), to_term(b)) > 0;
    }

    // Boundary terms of one multidegree are reduced modulo the span of the
    // normalized boundary relations in that multidegree.
    void eliminate_boundary(RawState& s) {
        std::map<Word, std::vector<RawKey>> groups;
        for (const auto& [key, c] : s)
            if (on_boundary(key)) groups[letters(key)].push_back(key);
        for (const auto& [deg, seeds] : groups) {
            std::vector<RawState> rows;
            std::set<RawKey> seen(seeds.begin(), seeds.end());
            std::vector<RawKey> queue(seeds.begin(), seeds.end());
            for (std::size_t qi = 0; qi < queue.size() && qi < 64; ++qi) {
                for (auto& r : boundary_relations(queue[qi])) {
                    for (const auto& [rk, rc] : r)
                        if (on_boundary(rk) && seen.insert(rk).second) queue.push_back(rk);
                    rows.push_back(std::move(r));
                }
            }
            std::vector<std::pair<RawKey, RawState>> basis;
            for (auto& r : rows) {
                for (const auto& [pk, pr] : basis) reduce_by(r, pk, pr);
                if (r.empty()) continue;
                RawKey piv = r.begin()->first;
                for (const auto& [rk, rc] : r)
                    if (pivot_before(rk, piv)) piv = rk;
                const Elem inv = f_.inv(r.at(piv));
                for (auto& [rk, rc] : r) rc = f_.mul(rc, inv);
                for (auto& [pk, pr] : basis) reduce_by(pr, piv, r);
                basis.push_back({piv, std::move(r)});
            }
            for (const auto& [pk, pr] : basis) {
                auto it = s.find(pk);
                if (it == s.end()) continue;
                const Elem lambda = it->second;
                std::vector<RawTerm> after;
                for (const auto& [rk, rc] : pr)
                    if (rk != pk) after.push_back({rk.first, rk.second, f_.neg(f_.mul(lambda, rc))});
                tick();
                record("BOUNDARY-LIN", pk, lambda, after);
                s.erase(it);
                for (const auto& t : after) add_to(f_, s, {t.word, t.psi}, t.coeff);
            }
        }
    }

    // r -= r[pk] * row, where row has coefficient 1 at pk.
    void reduce_by(RawState& r, const RawKey& pk, const RawState& row) const {
        auto it = r.find(pk);
        if (it == r.end()) return;
        const Elem c = it->second;
        for (const auto& [rk, rc] : row) add_to(f_, r, rk, f_.neg(f_.mul(c, rc)));
    }
};

}  // namespace detail

inline CanonicalForm reduce(const FreePoly& f, const IdealSpec& spec) {
    return detail::Reducer(spec, nullptr).run(f);
}

inline Trace reduction_trace(const FreePoly& f, const IdealSpec& spec) {
    Trace t;
    detail::Reducer(spec, &t).run(f);
    return t;
}

// Applies the recorded steps to f and assembles the result.
inline CanonicalForm replay_trace(const FreePoly& f, const Trace& trace, const IdealSpec& spec) {
    const Field& fld = *spec.field;
    detail::RawState s;
    for (const auto& [w, c] : f.terms()) detail::add_to(fld, s, {w, {}}, c);
    for (const auto& step : trace) {
        detail::add_to(fld, s, {step.before.word, step.before.psi}, fld.neg(step.before.coeff));
        for (const auto& t : step.after) detail::add_to(fld, s, {t.word, t.psi}, t.coeff);
    }
    return detail::Reducer::assemble(s, spec);
}

}  // namespace grassid
