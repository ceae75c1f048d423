#pragma once

// Normal-form terms beg * [a,b][c,d]... modulo the triple commutator, the SS
// term order, and generators of the identity bases I1..I4.

#include <bit>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grassid/field.hpp"
#include "grassid/freealg.hpp"
#include "grassid/grassmann.hpp"
#include "grassid/text.hpp"

namespace grassid {

using Beg = std::vector<std::pair<Var, int>>;

struct PrTerm {
    Beg beg;               // ascending variables, exponents >= 1
    std::vector<Var> psi;  // ascending; read as [psi0,psi1][psi2,psi3]...

    Word beg_word() const {
        Word w;
        for (const auto& [v, e] : beg) w.insert(w.end(), static_cast<std::size_t>(e), v);
        return w;
    }
    int exponent(Var v) const {
        for (const auto& [x, e] : beg)
            if (x == v) return e;
        return 0;
    }
    bool in_psi(Var v) const { return std::binary_search(psi.begin(), psi.end(), v); }

    // Structural order, used only for container keys.
    friend auto operator<=>(const PrTerm&, const PrTerm&) = default;
};

namespace detail {

// Sorts v ascending; returns the permutation sign, or 0 if a variable repeats.
inline int sort_with_sign(std::vector<Var>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] == v[i]) return 0;
    return sign;
}

inline Beg run_lengths(const Word& sorted) {
    Beg b;
    for (const auto& v : sorted) {
        if (!b.empty() && b.back().first == v)
            ++b.back().second;
        else
            b.push_back({v, 1});
    }
    return b;
}

}  // namespace detail

// beg given as an ascending word, psi as an arbitrary bracket sequence.
inline std::optional<std::pair<int, PrTerm>> make_term(const Word& sorted_beg, std::vector<Var> psi) {
    if (psi.size() % 2) throw Error("bracket sequence of odd length");
    if (!std::is_sorted(sorted_beg.begin(), sorted_beg.end())) throw Error("beg word is not ascending");
    const int s = detail::sort_with_sign(psi);
    if (s == 0) return std::nullopt;
    return std::pair{s, PrTerm{detail::run_lengths(sorted_beg), std::move(psi)}};
}

// Product of 2-brackets, as a list of pairs, in canonical orientation.
inline std::optional<std::pair<int, std::vector<Var>>> straighten_psi(
    const std::vector<std::pair<Var, Var>>& brackets) {
    std::vector<Var> seq;
    for (const auto& [a, b] : brackets) {
        seq.push_back(a);
        seq.push_back(b);
    }
    const int s = detail::sort_with_sign(seq);
    if (s == 0) return std::nullopt;
    return std::pair{s, seq};
}

// ---------------------------------------------------------------------------
// Statistics and classes

struct TermStats {
    std::map<Var, int> degree_of;  // per variable, over beg and psi
    int deg_y = 0, deg_z = 0, deg = 0;
    int beg_z = 0;  // deg_Z(beg)
    int psi_y = 0;  // deg_Y(psi)
    std::set<Var> vars, yym;
    std::optional<Var> pr_z;
};

inline TermStats term_stats(const PrTerm& u) {
    TermStats s;
    for (const auto& [v, e] : u.beg) {
        s.degree_of[v] += e;
        if (v.odd()) {
            s.beg_z += e;
            if (!s.pr_z) s.pr_z = v;
        }
    }
    for (const auto& v : u.psi) {
        s.degree_of[v] += 1;
        if (!v.odd()) ++s.psi_y;
    }
    for (const auto& [v, d] : s.degree_of) {
        (v.odd() ? s.deg_z : s.deg_y) += d;
        s.vars.insert(v);
    }
    s.deg = s.deg_y + s.deg_z;
    for (const auto& [v, e] : u.beg)
        if (!v.odd() && !u.in_psi(v)) s.yym.insert(v);
    return s;
}

struct IdealSpec {
    enum class Which { I1, I2, I3, I4 };
    Which which = Which::I2;
    int k = 0;
    FieldPtr field;

    static IdealSpec i1(FieldPtr f) { return {Which::I1, 0, std::move(f)}; }
    static IdealSpec i2(FieldPtr f) { return {Which::I2, 0, std::move(f)}; }
    static IdealSpec i3(FieldPtr f, int k) {
        if (k < 0) throw Error("I3 needs k >= 0");
        return {Which::I3, k, std::move(f)};
    }
    static IdealSpec i4(FieldPtr f, int k) {
        if (k < 1) throw Error("I4 needs k >= 1");
        return {Which::I4, k, std::move(f)};
    }

    GradingSpec grading() const {
        switch (which) {
            case Which::I1: return GradingSpec::canonical();
            case Which::I2: return GradingSpec::alternating();
            case Which::I3: return GradingSpec::first_k_star(k);
            case Which::I4: return GradingSpec::first_k(k);
        }
        return GradingSpec::canonical();
    }

    std::string name() const {
        switch (which) {
            case Which::I1: return "I1";
            case Which::I2: return "I2";
            case Which::I3: return "I3(k=" + std::to_string(k) + ")";
            case Which::I4: return "I4(k=" + std::to_string(k) + ")";
        }
        return "?";
    }
};

// The ideal whose relatively free algebra matches a grading.
inline IdealSpec ideal_for_grading(const GradingSpec& g, FieldPtr f) {
    switch (g.kind) {
        case GradingSpec::Kind::Canonical: return IdealSpec::i1(std::move(f));
        case GradingSpec::Kind::Alternating: return IdealSpec::i2(std::move(f));
        case GradingSpec::Kind::FirstKStar: return IdealSpec::i3(std::move(f), g.k);
        case GradingSpec::Kind::FirstK: return IdealSpec::i4(std::move(f), g.k);
    }
    throw Error("unknown grading");
}

// "I1", "I2", "I3:k", "I4:k"
inline IdealSpec parse_ideal(const std::string& s, FieldPtr f) {
    auto num = [&](std::size_t at) {
        try {
            std::size_t used = 0;
            const int k = std::stoi(s.substr(at), &used);
            if (at + used != s.size()) throw Error("");
            return k;
        } catch (const std::exception&) {
            throw Error("bad ideal '" + s + "': expected I1, I2, I3:<k> or I4:<k>");
        }
    };
    if (s == "I1") return IdealSpec::i1(std::move(f));
    if (s == "I2") return IdealSpec::i2(std::move(f));
    if (s.rfind("I3:", 0) == 0) return IdealSpec::i3(std::move(f), num(3));
    if (s.rfind("I4:", 0) == 0) return IdealSpec::i4(std::move(f), num(3));
    throw Error("bad ideal '" + s + "': expected I1, I2, I3:<k> or I4:<k>");
}

struct SSFlags {
    bool ss = false, ss0 = false, ss1 = false, ss2 = false, ss3 = false;
};

inline SSFlags ss_class(const PrTerm& u, int p, int k) {
    SSFlags f;
    bool exps_ok = true, z_single = true;
    for (const auto& [v, e] : u.beg) {
        if (e > p - 1) exps_ok = false;
        if (v.odd() && e > 1) z_single = false;
    }
    std::vector<Var> ps = u.psi;
    const bool multilinear = ps.size() % 2 == 0 && detail::sort_with_sign(ps) != 0;
    f.ss = exps_ok && multilinear;
    f.ss0 = exps_ok && z_single && u.psi.empty();
    const TermStats s = term_stats(u);
    f.ss1 = f.ss && s.deg_z <= k + 1;
    f.ss2 = f.ss && s.psi_y <= k && s.beg_z + s.psi_y <= k + 1;
    f.ss3 = f.ss2 && !(s.beg_z + s.psi_y == k + 1 && s.pr_z && u.in_psi(*s.pr_z));
    return f;
}

inline SSFlags ss_class(const PrTerm& u, const IdealSpec& spec) { return ss_class(u, spec.field->p(), spec.k); }

// Whether u lies in the class reduce() promises for the ideal.
inline bool in_canonical_class(const PrTerm& u, const IdealSpec& spec) {
    const SSFlags f = ss_class(u, spec);
    switch (spec.which) {
        case IdealSpec::Which::I1: return f.ss0;
        case IdealSpec::Which::I2: return f.ss;
        case IdealSpec::Which::I3: return f.ss && term_stats(u).deg_z <= spec.k;
        case IdealSpec::Which::I4: return f.ss3;
    }
    return false;
}

// ---------------------------------------------------------------------------
// SS order

namespace detail {

inline std::strong_ordering right_lex(const Word& a, const Word& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 1; i <= n; ++i) {
        const auto c = a[a.size() - i] <=> b[b.size() - i];
        if (c != 0) return c;
    }
    return a.size() <=> b.size();
}

}  // namespace detail

inline std::strong_ordering ss_compare(const PrTerm& u, const PrTerm& v) {
    const int du = static_cast<int>(u.beg_word().size() + u.psi.size());
    const int dv = static_cast<int>(v.beg_word().size() + v.psi.size());
    if (du != dv) return du <=> dv;
    const auto b = detail::right_lex(u.beg_word(), v.beg_word());
    if (b != 0) return b;
    return detail::right_lex(u.psi, v.psi);
}

inline std::string order_name(std::strong_ordering o) {
    return o < 0 ? "Less" : o > 0 ? "Greater" : "Equal";
}

// ---------------------------------------------------------------------------
// Canonical forms

struct CanonicalForm {
    IdealSpec ideal;
    // p-polynomial coefficient and term, SS-descending.
    std::vector<std::pair<FreePoly, PrTerm>> pairs;

    bool is_zero() const { return pairs.empty(); }
    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.pairs == b.pairs; }
};

inline const PrTerm& leading_term(const CanonicalForm& f) {
    if (f.pairs.empty()) throw Error("leading term of the zero form");
    const PrTerm* best = &f.pairs.front().second;
    for (const auto& [c, u] : f.pairs)
        if (ss_compare(u, *best) > 0) best = &u;
    return *best;
}

inline bool is_bad_term(const PrTerm& u, const PrTerm& lt) {
    if (u == lt) return false;
    const TermStats su = term_stats(u), sl = term_stats(lt);
    if (su.deg != sl.deg || su.vars != sl.vars) return false;
    for (const auto& [v, d] : sl.degree_of)
        if (su.degree_of.at(v) != d) return false;
    if (sl.beg_z > 0) {
        std::set<Var> zs;
        for (const auto& [v, e] : lt.beg)
            if (v.odd()) zs.insert(v);
        for (const auto& [v, e] : u.beg)
            if (v.odd()) zs.insert(v);
        for (const auto& z : zs) {
            if (z == *sl.pr_z) {
                if (u.exponent(z) + 1 != lt.exponent(z)) return false;
            } else if (u.exponent(z) != lt.exponent(z)) {
                return false;
            }
        }
    }
    for (const auto& [v, e] : lt.beg)
        if (!v.odd() && e > u.exponent(v)) return false;
    return true;
}

inline std::vector<PrTerm> bad_terms(const CanonicalForm& f) {
    const PrTerm& lt = leading_term(f);
    std::vector<PrTerm> out;
    for (const auto& [c, u] : f.pairs)
        if (is_bad_term(u, lt)) out.push_back(u);
    return out;
}

// The SS-maximal bad term.
inline std::optional<PrTerm> lbt(const CanonicalForm& f) {
    std::optional<PrTerm> best;
    for (auto& u : bad_terms(f))
        if (!best || ss_compare(u, *best) > 0) best = u;
    return best;
}

// ---------------------------------------------------------------------------
// Expansion and text

inline FreePoly expand(const PrTerm& u, const FieldPtr& f) {
    FreePoly out = FreePoly::word(f, u.beg_word());
    for (std::size_t i = 0; i + 1 < u.psi.size(); i += 2)
        out = out * commutator(FreePoly::var(f, u.psi[i]), FreePoly::var(f, u.psi[i + 1]));
    return out;
}

inline FreePoly expand(const CanonicalForm& cf) {
    const auto& f = cf.ideal.field;
    FreePoly out(f);
    for (const auto& [c, u] : cf.pairs) out += c * expand(u, f);
    return out;
}

inline std::string term_text(const PrTerm& u) {
    std::string out;
    for (const auto& [v, e] : u.beg) {
        if (!out.empty()) out += "*";
        out += v.name();
        if (e > 1) out += "^" + std::to_string(e);
    }
    std::string br;
    for (std::size_t i = 0; i + 1 < u.psi.size(); i += 2)
        br += "[" + u.psi[i].name() + "," + u.psi[i + 1].name() + "]";
    if (!br.empty()) out += (out.empty() ? "" : "*") + br;
    return out.empty() ? "1" : out;
}

// Commutative exponent notation for p-polynomials: y1^3*y2^6.
inline std::string ppoly_text(const FreePoly& c) {
    std::vector<std::pair<Elem, std::string>> parts;
    for (const auto& [w, e] : c.terms()) {
        std::string s;
        for (const auto& [v, n] : detail::run_lengths(w)) {
            if (!s.empty()) s += "*";
            s += v.name();
            if (n > 1) s += "^" + std::to_string(n);
        }
        parts.push_back({e, s});
    }
    return join_signed(*c.field(), parts);
}

inline std::string to_string(const CanonicalForm& cf) {
    if (cf.pairs.empty()) return "0";
    const Field& f = *cf.ideal.field;
    std::vector<std::pair<Elem, std::string>> parts;
    for (const auto& [c, u] : cf.pairs) {
        const auto& terms = c.terms();
        if (terms.size() == 1 && terms.begin()->first.empty())
            parts.push_back({terms.begin()->second, term_text(u)});
        else
            parts.push_back({1, "(" + ppoly_text(c) + ") * " + term_text(u)});
    }
    return join_signed(f, parts);
}

// Parses beg factors followed by 2-brackets, e.g. y1^2*z3*[y2,z1]. The
// returned sign accounts for reorienting the brackets; 0 means the product
// vanishes.
inline std::pair<int, PrTerm> parse_term(const std::string& text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
    };
    auto number = [&] {
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw SyntaxError(start, "expected a number");
        return std::stoi(text.substr(start, i - start));
    };
    auto variable = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size() || (text[i] != 'y' && text[i] != 'z')) throw SyntaxError(i, "expected a variable");
        const bool odd = text[i++] == 'z';
        const int idx = number();
        if (idx < 1) throw SyntaxError(i, "variable index must be >= 1");
        return odd ? Var::z(idx) : Var::y(idx);
    };
    Word beg;
    std::vector<std::pair<Var, Var>> br;
    skip();
    if (text.substr(i) == "1") return {1, PrTerm{}};
    while (i < text.size()) {
        if (text[i] == '[') {
            ++i;
            const Var a = variable();
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i >= text.size() || text[i] != ',') throw SyntaxError(i, "expected ','");
            ++i;
            const Var b = variable();
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i >= text.size() || text[i] != ']') throw SyntaxError(i, "expected ']'");
            ++i;
            br.push_back({a, b});
        } else {
            if (!br.empty()) throw SyntaxError(i, "power factors must precede brackets");
            const std::size_t at = i;
            const Var v = variable();
            int e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                e = number();
                if (e < 1) throw SyntaxError(i, "exponent must be >= 1");
            }
            if (!beg.empty() && beg.back() >= v)
                throw SyntaxError(at, "power factors must be in ascending variable order");
            beg.insert(beg.end(), static_cast<std::size_t>(e), v);
        }
        skip();
    }
    auto ps = straighten_psi(br);
    if (!ps) return {0, PrTerm{detail::run_lengths(beg), {}}};
    return {ps->first, PrTerm{detail::run_lengths(beg), ps->second}};
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline void check_positions(const std::vector<int>& T, int m) {
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i] < 1 || T[i] > m) throw Error("position out of range");
        if (i > 0 && T[i - 1] >= T[i]) throw Error("positions must be strictly increasing");
    }
}

inline std::vector<int> complement(const std::vector<int>& T, int m) {
    std::vector<int> c;
    for (int i = 1; i <= m; ++i)
        if (!std::binary_search(T.begin(), T.end(), i)) c.push_back(i);
    return c;
}

inline std::vector<Var> z_range(int from, int count) {
    std::vector<Var> zs;
    for (int i = 0; i < count; ++i) zs.push_back(Var::z(from + i));
    return zs;
}

inline FreePoly vars_product(const FieldPtr& f, const std::vector<Var>& vs) {
    return FreePoly::word(f, Word(vs.begin(), vs.end()));
}

inline FreePoly bracket_chain(const FieldPtr& f, const std::vector<Var>& seq) {
    FreePoly out = FreePoly::one(f);
    for (std::size_t i = 0; i + 1 < seq.size(); i += 2)
        out = out * commutator(FreePoly::var(f, seq[i]), FreePoly::var(f, seq[i + 1]));
    return out;
}

// Even-size subsets of {1..m} as increasing position lists.
inline std::vector<std::vector<int>> even_subsets(int m) {
    std::vector<std::vector<int>> out;
    for (unsigned long s = 0; s < (1ul << m); ++s) {
        if (std::popcount(s) % 2) continue;
        std::vector<int> T;
        for (int i = 0; i < m; ++i)
            if (s >> i & 1) T.push_back(i + 1);
        out.push_back(T);
    }
    return out;
}

}  // namespace detail

inline FreePoly gen_fT(const FieldPtr& f, const std::vector<Var>& zs, const std::vector<int>& T) {
    const int m = static_cast<int>(zs.size());
    detail::check_positions(T, m);
    if (T.size() % 2) throw Error("f_T needs |T| even");
    std::vector<Var> lone, br;
    for (int i : detail::complement(T, m)) lone.push_back(zs[i - 1]);
    for (int j : T) br.push_back(zs[j - 1]);
    return detail::vars_product(f, lone) * detail::bracket_chain(f, br);
}

inline FreePoly gen_rT(const FieldPtr& f, Var y, const std::vector<Var>& zs, const std::vector<int>& T) {
    const int m = static_cast<int>(zs.size());
    detail::check_positions(T, m);
    if (T.size() % 2 == 0) throw Error("r_T needs |T| odd");
    std::vector<Var> lone, br{y};
    for (int i : detail::complement(T, m)) lone.push_back(zs[i - 1]);
    for (int j : T) br.push_back(zs[j - 1]);
    return detail::vars_product(f, lone) * detail::bracket_chain(f, br);
}

// (-2)^(-j) in F.
inline Elem gm_weight(const Field& f, int j) {
    const Elem m2 = f.neg(f.from_int(2));
    return f.inv(f.pow(m2, static_cast<unsigned>(j)));
}

inline FreePoly gen_gm(const FieldPtr& f, const std::vector<Var>& zs) {
    const int m = static_cast<int>(zs.size());
    if (m < 1) throw Error("g_m needs m >= 1");
    FreePoly out(f);
    for (const auto& T : detail::even_subsets(m))
        out += gen_fT(f, zs, T).scale(gm_weight(*f, static_cast<int>(T.size()) / 2));
    return out;
}

inline FreePoly gen_gm(const FieldPtr& f, int m) { return gen_gm(f, detail::z_range(1, m)); }

// Number of f_T summands of g_m.
inline long gm_term_count(int m) {
    return static_cast<long>(detail::even_subsets(m).size());
}

struct NamedPoly {
    std::string name;
    FreePoly poly;
};

inline std::vector<NamedPoly> gen_ideal_basis(const IdealSpec& spec) {
    const FieldPtr& f = spec.field;
    const int p = f->p(), q = f->q();
    auto V = [&](const std::string& s) { return parse_poly(s, f); };
    auto y = [&](int i) { return FreePoly::var(f, Var::y(i)); };
    auto z = [&](int i) { return FreePoly::var(f, Var::z(i)); };
    std::vector<NamedPoly> out;
    auto triple = [&] {
        for (int mask = 0; mask < 8; ++mask) {
            std::vector<FreePoly> xs;
            std::string nm = "triple[";
            for (int i = 0; i < 3; ++i) {
                const bool odd = mask >> i & 1;
                xs.push_back(odd ? z(i + 1) : y(i + 1));
                nm += std::string(i ? "," : "") + (odd ? "z" : "y") + std::to_string(i + 1);
            }
            out.push_back({nm + "]", commutator(xs)});
        }
    };
    auto zp = [&] { out.push_back({"z^p", z(1).pow(static_cast<unsigned>(p))}); };
    auto ypq = [&] {
        out.push_back({"y^pq-y^p", y(1).pow(static_cast<unsigned>(p * q)) - y(1).pow(static_cast<unsigned>(p))});
    };
    switch (spec.which) {
        case IdealSpec::Which::I1:
            out.push_back({"[y1,y2]", V("[y1,y2]")});
            out.push_back({"[y1,z2]", V("[y1,z2]")});
            out.push_back({"z1z2+z2z1", V("z1*z2 + z2*z1")});
            ypq();
            break;
        case IdealSpec::Which::I2:
            triple();
            zp();
            ypq();
            break;
        case IdealSpec::Which::I3: {
            triple();
            FreePoly prod = FreePoly::one(f);
            for (int i = 1; i <= spec.k + 1; ++i) prod = prod * z(i);
            out.push_back({"z1..z" + std::to_string(spec.k + 1), prod});
            zp();
            ypq();
            break;
        }
        case IdealSpec::Which::I4: {
            const int k = spec.k;
            auto ypairs = [&](int from, int count) {
                FreePoly acc = FreePoly::one(f);
                for (int i = 0; i + 1 < count; i += 2) acc = acc * commutator(y(from + i), y(from + i + 1));
                return acc;
            };
            if (k % 2) {
                out.push_back({"(1)", ypairs(1, k + 1)});
            } else {
                out.push_back({"(2) x=y", ypairs(1, k) * commutator(y(k + 1), y(k + 2))});
                out.push_back({"(2) x=z", ypairs(1, k) * commutator(y(k + 1), z(1))});
            }
            for (int l = 0; l <= k; ++l) {
                const int m = k - l + 2;
                const FreePoly g = gen_gm(f, m);
                const std::string tag = " l=" + std::to_string(l);
                if (l % 2 == 0) {
                    out.push_back({"(3)" + tag, g * ypairs(1, l)});
                } else {
                    out.push_back({"(4)" + tag, g * commutator(z(m + 1), y(1)) * ypairs(2, l - 1)});
                    out.push_back({"(5)" + tag, commutator(g, y(1)) * ypairs(2, l - 1)});
                }
            }
            triple();
            zp();
            ypq();
            break;
        }
    }
    return out;
}

}  // namespace grassid
