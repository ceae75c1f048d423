#pragma once

// Seeded random polynomials, terms and assignments for property checks.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "grassid/canon.hpp"
#include "grassid/freealg.hpp"
#include "grassid/grassmann.hpp"

namespace grassid {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Elem random_nonzero(const Field& f, Rng& rng) { return static_cast<Elem>(uniform(rng, 1, f.q() - 1)); }

struct PolyShape {
    int ys = 2, zs = 2;
    int max_terms = 6;
    int max_deg = 6;
};

inline FreePoly random_poly(const FieldPtr& f, Rng& rng, const PolyShape& s) {
    FreePoly p(f);
    const int terms = uniform(rng, 1, s.max_terms);
    for (int t = 0; t < terms; ++t) {
        Word w;
        const int len = uniform(rng, 1, s.max_deg);
        for (int i = 0; i < len; ++i) {
            const bool odd = s.ys == 0 || (s.zs > 0 && uniform(rng, 0, 1));
            w.push_back(odd ? Var::z(uniform(rng, 1, s.zs)) : Var::y(uniform(rng, 1, s.ys)));
        }
        p.add_term(w, random_nonzero(*f, rng));
    }
    return p;
}

// Words of a fixed parity in y1..y_ys, z1..z_zs.
inline FreePoly random_homogeneous_poly(const FieldPtr& f, Rng& rng, int parity, int ys, int zs, int max_len,
                                        int max_terms) {
    FreePoly p(f);
    const int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Word w;
        const int len = uniform(rng, 1, max_len);
        for (int i = 0; i < len; ++i)
            w.push_back(uniform(rng, 0, 1) ? Var::z(uniform(rng, 1, zs)) : Var::y(uniform(rng, 1, ys)));
        if (word_parity(w) != parity) w.push_back(Var::z(uniform(rng, 1, zs)));
        p.add_term(w, random_nonzero(*f, rng));
    }
    if (p.is_zero()) p = FreePoly::var(f, parity ? Var::z(1) : Var::y(1));
    return p;
}

// u * g(h_1, ..., h_r) * v with parity-preserving h_i; h_i are single
// letters (up to the parity fix) once g has degree above 6.
inline FreePoly random_instance(const FreePoly& g, Rng& rng) {
    const auto& f = g.field();
    std::size_t deg = 0;
    for (const auto& [w, c] : g.terms()) deg = std::max(deg, w.size());
    const int len = deg > 6 ? 1 : 2;
    PolyAssignment sub;
    for (const auto& v : g.variables()) sub.emplace(v, random_homogeneous_poly(f, rng, v.parity(), 2, 3, len, 2));
    FreePoly out = substitute(g, sub);
    auto side = [&] {
        Word w;
        const int len = uniform(rng, 0, 1);
        for (int i = 0; i < len; ++i) w.push_back(uniform(rng, 0, 1) ? Var::z(uniform(rng, 1, 2)) : Var::y(uniform(rng, 1, 2)));
        return FreePoly::word(f, w);
    };
    return side() * out * side();
}

struct TermShapeLimits {
    int beg_vars = 3;   // y1..y3 and z1..z3 may occur in beg
    int max_exp = 2;
    int psi_vars = 4;   // y1..y4 and z1..z4 may occur in psi
};

inline PrTerm random_term(Rng& rng, const TermShapeLimits& lim) {
    for (;;) {
        Word beg;
        std::vector<Var> psi;
        for (int i = 1; i <= lim.beg_vars; ++i) {
            beg.insert(beg.end(), static_cast<std::size_t>(uniform(rng, 0, lim.max_exp)), Var::y(i));
            beg.insert(beg.end(), static_cast<std::size_t>(uniform(rng, 0, lim.max_exp)), Var::z(i));
        }
        std::sort(beg.begin(), beg.end());
        for (int i = 1; i <= lim.psi_vars; ++i) {
            if (uniform(rng, 0, 2) == 0) psi.push_back(Var::y(i));
            if (uniform(rng, 0, 2) == 0) psi.push_back(Var::z(i));
        }
        if (psi.size() % 2) psi.erase(psi.begin() + uniform(rng, 0, static_cast<int>(psi.size()) - 1));
        if (auto t = make_term(beg, psi)) return t->second;
    }
}

// Bracket-free, every monomial holds every variable with exponent p*i, 1 <= i < q.
inline FreePoly random_ppoly(const FieldPtr& f, Rng& rng, int max_vars) {
    const int p = f->p(), q = f->q();
    const int nv = uniform(rng, 1, max_vars);
    FreePoly out(f);
    while (out.is_zero()) {
        const int terms = uniform(rng, 1, 3);
        for (int t = 0; t < terms; ++t) {
            Word w;
            for (int v = 1; v <= nv; ++v)
                w.insert(w.end(), static_cast<std::size_t>(p * uniform(rng, 1, q - 1)), Var::y(v));
            out.add_term(w, random_nonzero(*f, rng));
        }
    }
    return out;
}

// Uniform coefficients on every blade of G_n.
inline GElem random_element(const FieldPtr& f, int n, Rng& rng, bool unitary = true) {
    std::vector<GElem::Term> terms;
    const Mask top = detail::full_mask(n);
    for (Mask m = unitary ? 0 : 1;; ++m) {
        terms.push_back({m, static_cast<Elem>(uniform(rng, 0, f->q() - 1))});
        if (m == top) break;
    }
    return GElem::from_terms(f, n, std::move(terms));
}

inline GAssignment random_assignment(const FieldPtr& f, const std::set<Var>& vars, const GradingSpec& g, int n,
                                     int max_wt, Rng& rng) {
    HomogeneousSpan even(f, g, 0, n, max_wt), odd(f, g, 1, n, max_wt);
    GAssignment a{g, {}};
    for (const auto& v : vars) a.values.emplace(v, v.odd() ? odd.random(rng) : even.random(rng));
    return a;
}

}  // namespace grassid
