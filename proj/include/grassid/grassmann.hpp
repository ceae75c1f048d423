#pragma once

// Truncated unitary Grassmann algebra G_n over GF(p^t).
//
// A blade e_{i_1} ... e_{i_m} (i_1 < ... < i_m) is stored as the bitmask with
// bit i-1 set for each index i, so n <= 64.  Elements keep their nonzero terms
// sorted by mask.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grassid/field.hpp"

namespace grassid {

using Mask = std::uint64_t;

inline constexpr int kMaxTruncation = 64;

struct Blade {
    Mask mask = 0;

    static Blade from_indices(const std::vector<int>& idx) {
        Blade b;
        int prev = 0;
        for (int i : idx) {
            if (i <= prev) throw Error("blade indices must be strictly increasing and positive");
            if (i > kMaxTruncation) throw Error("blade index exceeds 64");
            b.mask |= Mask{1} << (i - 1);
            prev = i;
        }
        return b;
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (Mask m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    int size() const { return std::popcount(mask); }
    friend bool operator==(Blade, Blade) = default;
};

namespace detail {

// Bit j of the result is the parity of the number of set bits of a strictly
// above position j.  The reordering sign of e_a * e_b is then
// popcount(b & crossing_mask(a)) mod 2.
inline Mask crossing_mask(Mask a) {
    for (int s = 1; s < 64; s <<= 1) a ^= a >> s;
    return a >> 1;
}

inline bool reorder_sign_odd(Mask a, Mask b) {
    int count = 0;
    for (Mask m = b; m; m &= m - 1) {
        const int j = std::countr_zero(m);
        if (j < 63) count += std::popcount(a >> (j + 1));
    }
    return count & 1;
}

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

}  // namespace detail

// Product of two blades: nullopt when supports intersect, otherwise the sign
// (+1 or -1) and the merged blade.
inline std::optional<std::pair<int, Blade>> blade_mul(Blade a, Blade b) {
    if (a.mask & b.mask) return std::nullopt;
    const int sign = detail::reorder_sign_odd(a.mask, b.mask) ? -1 : 1;
    return std::make_pair(sign, Blade{a.mask | b.mask});
}

class GElem {
public:
    using Term = std::pair<Mask, Elem>;

    GElem(FieldPtr f, int n) : f_(std::move(f)), n_(n) {
        if (n < 0 || n > kMaxTruncation) throw Error("truncation must be in [0, 64]");
    }

    static GElem zero(FieldPtr f, int n) { return {std::move(f), n}; }
    static GElem one(FieldPtr f, int n) { return scalar(std::move(f), n, 1); }
    static GElem scalar(FieldPtr f, int n, Elem c) {
        GElem g(std::move(f), n);
        if (c != 0) g.terms_.push_back({0, c});
        return g;
    }
    static GElem blade(FieldPtr f, int n, Blade b, Elem c = 1) {
        GElem g(std::move(f), n);
        if (b.mask & ~detail::full_mask(n)) throw Error("blade outside truncation");
        if (c != 0) g.terms_.push_back({b.mask, c});
        return g;
    }
    static GElem gen(FieldPtr f, int n, int i) {
        if (i < 1 || i > n) throw Error("generator index outside truncation");
        return blade(std::move(f), n, Blade{Mask{1} << (i - 1)});
    }
    // Takes arbitrary (mask, coeff) pairs; merges duplicates and drops zeros.
    static GElem from_terms(FieldPtr f, int n, std::vector<Term> terms) {
        GElem g(std::move(f), n);
        const Mask full = detail::full_mask(n);
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        for (const auto& [m, c] : terms) {
            if (m & ~full) throw Error("blade outside truncation");
            if (!g.terms_.empty() && g.terms_.back().first == m)
                g.terms_.back().second = g.f_->add(g.terms_.back().second, c);
            else
                g.terms_.push_back({m, c});
        }
        g.prune();
        return g;
    }

    const FieldPtr& field() const { return f_; }
    int truncation() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Elem coeff(Mask m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, Mask v) { return t.first < v; });
        return (it != terms_.end() && it->first == m) ? it->second : 0;
    }

    // Scalar part (coefficient of 1_G).
    Elem scalar_part() const { return coeff(0); }

    friend bool operator==(const GElem& a, const GElem& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    GElem operator+(const GElem& o) const { return combine(o, false); }
    GElem operator-(const GElem& o) const { return combine(o, true); }
    GElem operator-() const { return scale(f_->neg(1)); }

    GElem scale(Elem c) const {
        GElem g(f_, n_);
        if (c == 0) return g;
        g.terms_.reserve(terms_.size());
        for (const auto& [m, v] : terms_) g.terms_.push_back({m, f_->mul(v, c)});
        return g;
    }

    GElem operator*(const GElem& o) const;

    GElem pow(unsigned long long e) const {
        GElem result = one(f_, n_);
        GElem base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    // Definition-2.8 statistics.  wt(0) = 0 and dom(0) = 0 by convention.
    int wt() const {
        int w = 0;
        for (const auto& t : terms_) w = std::max(w, std::popcount(t.first));
        return w;
    }
    Mask supp() const {
        Mask s = 0;
        for (const auto& t : terms_) s |= t.first;
        return s;
    }
    GElem dom() const {
        GElem g(f_, n_);
        const int w = wt();
        for (const auto& t : terms_)
            if (std::popcount(t.first) == w) g.terms_.push_back(t);
        return g;
    }

    void check_compatible(const GElem& o) const {
        if (n_ != o.n_) throw Error("mismatched Grassmann truncations");
        require_same_field(f_, o.f_);
    }

private:
    void prune() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Term& t) { return t.second == 0; }),
                     terms_.end());
    }

    GElem combine(const GElem& o, bool subtract) const {
        check_compatible(o);
        GElem g(f_, n_);
        g.terms_.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin(), j = o.terms_.begin();
        while (i != terms_.end() || j != o.terms_.end()) {
            if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
                g.terms_.push_back(*i++);
            } else {
                const Elem rhs = subtract ? f_->neg(j->second) : j->second;
                if (i != terms_.end() && i->first == j->first) {
                    const Elem s = f_->add(i->second, rhs);
                    if (s) g.terms_.push_back({i->first, s});
                    ++i;
                } else {
                    g.terms_.push_back({j->first, rhs});
                }
                ++j;
            }
        }
        return g;
    }

    FieldPtr f_;
    int n_;
    std::vector<Term> terms_;
};

namespace detail {

inline constexpr int kDenseLimit = 14;

// Accumulates signed products into either a dense array (small n) or a hash
// map.  Prime fields accumulate plain integers and reduce once at the end.
inline std::vector<GElem::Term> multiply_terms(const Field& f, int n,
                                               const std::vector<GElem::Term>& a,
                                               const std::vector<GElem::Term>& b) {
    std::vector<GElem::Term> out;
    if (a.empty() || b.empty()) return out;
    const bool prime = f.t() == 1;
    const long long p = f.p();
    const Mask full = full_mask(n);

    if (a.size() * b.size() <= 64) {
        std::vector<std::pair<Mask, long long>> prods;
        prods.reserve(a.size() * b.size());
        for (const auto& [am, ac] : a) {
            const Mask cross = crossing_mask(am);
            for (const auto& [bm, bc] : b) {
                if (bm & am) continue;
                const bool odd = std::popcount(bm & cross) & 1;
                long long v = prime ? static_cast<long long>(ac) * bc : f.mul(ac, bc);
                if (odd) v = prime ? -v : f.neg(static_cast<Elem>(v));
                prods.push_back({am | bm, v});
            }
        }
        std::sort(prods.begin(), prods.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        out.reserve(prods.size());
        for (std::size_t i = 0; i < prods.size();) {
            const Mask m = prods[i].first;
            long long v = 0;
            for (; i < prods.size() && prods[i].first == m; ++i)
                v = prime ? v + prods[i].second : f.add(static_cast<Elem>(v), static_cast<Elem>(prods[i].second));
            if (prime) v = ((v % p) + p) % p;
            if (v) out.push_back({m, static_cast<Elem>(v)});
        }
        return out;
    }

    if (n <= kDenseLimit) {
        const std::size_t size = std::size_t{1} << n;
        std::vector<Elem> bdense;
        const bool use_dense_b = b.size() > 32;
        if (use_dense_b) {
            bdense.assign(size, 0);
            for (const auto& [m, c] : b) bdense[m] = c;
        }
        std::vector<long long> acc_int;
        std::vector<Elem> acc_f;
        if (prime)
            acc_int.assign(size, 0);
        else
            acc_f.assign(size, 0);
        auto emit = [&](Mask am, Elem ac, Mask bm, Elem bc, Mask cross) {
            const bool odd = std::popcount(bm & cross) & 1;
            if (prime) {
                long long v = static_cast<long long>(ac) * bc;
                acc_int[am | bm] += odd ? -v : v;
            } else {
                Elem v = f.mul(ac, bc);
                if (odd) v = f.neg(v);
                acc_f[am | bm] = f.add(acc_f[am | bm], v);
            }
        };
        for (const auto& [am, ac] : a) {
            const Mask cross = crossing_mask(am);
            const Mask free = full & ~am;
            const std::size_t sub_count = std::size_t{1} << std::popcount(free);
            if (use_dense_b && sub_count < b.size()) {
                // Enumerate submasks of the free positions.
                Mask s = free;
                while (true) {
                    const Elem bc = bdense[s];
                    if (bc) emit(am, ac, s, bc, cross);
                    if (s == 0) break;
                    s = (s - 1) & free;
                }
            } else {
                for (const auto& [bm, bc] : b)
                    if (!(bm & am)) emit(am, ac, bm, bc, cross);
            }
        }
        for (std::size_t m = 0; m < size; ++m) {
            if (prime) {
                long long v = acc_int[m] % p;
                if (v < 0) v += p;
                if (v) out.push_back({static_cast<Mask>(m), static_cast<Elem>(v)});
            } else if (acc_f[m]) {
                out.push_back({static_cast<Mask>(m), acc_f[m]});
            }
        }
        return out;
    }

    std::unordered_map<Mask, long long> acc;
    acc.reserve(a.size() * b.size() / 2 + 1);
    for (const auto& [am, ac] : a) {
        const Mask cross = crossing_mask(am);
        for (const auto& [bm, bc] : b) {
            if (bm & am) continue;
            const bool odd = std::popcount(bm & cross) & 1;
            auto& slot = acc[am | bm];
            if (prime) {
                long long v = static_cast<long long>(ac) * bc;
                slot = (slot + (odd ? -v : v)) % p;
            } else {
                Elem v = f.mul(ac, bc);
                if (odd) v = f.neg(v);
                slot = f.add(static_cast<Elem>(slot), v);
            }
        }
    }
    for (const auto& [m, v] : acc) {
        long long r = prime ? ((v % p) + p) % p : v;
        if (r) out.push_back({m, static_cast<Elem>(r)});
    }
    std::sort(out.begin(), out.end(),
              [](const GElem::Term& x, const GElem::Term& y) { return x.first < y.first; });
    return out;
}

}  // namespace detail

inline GElem GElem::operator*(const GElem& o) const {
    check_compatible(o);
    GElem g(f_, n_);
    g.terms_ = detail::multiply_terms(*f_, n_, terms_, o.terms_);
    return g;
}

inline GElem commutator(const GElem& a, const GElem& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// Gradings

struct GradingSpec {
    enum class Kind { Canonical, Alternating, FirstKStar, FirstK };
    Kind kind = Kind::Canonical;
    int k = 0;

    static GradingSpec canonical() { return {Kind::Canonical, 0}; }
    static GradingSpec alternating() { return {Kind::Alternating, 0}; }
    static GradingSpec first_k_star(int k) {
        if (k < 0) throw Error("k must be >= 0 for the k* grading");
        return {Kind::FirstKStar, k};
    }
    static GradingSpec first_k(int k) {
        if (k < 1) throw Error("k must be >= 1 for the k grading");
        return {Kind::FirstK, k};
    }

    // Generators negated by the grading automorphism, restricted to G_n.
    Mask negated(int n) const {
        const Mask full = detail::full_mask(n);
        switch (kind) {
            case Kind::Canonical:
                return full;
            case Kind::Alternating:
                // e_i -> -e_i iff i is odd, i.e. bit i-1 even.
                return full & Mask{0x5555555555555555ULL};
            case Kind::FirstKStar:
                return full & detail::full_mask(std::min(k, 64));
            case Kind::FirstK:
                return full & ~detail::full_mask(std::min(k, 64));
        }
        return 0;
    }

    int blade_parity(Mask m, int n) const { return std::popcount(m & negated(n)) & 1; }

    std::string name() const {
        switch (kind) {
            case Kind::Canonical:
                return "canonical";
            case Kind::Alternating:
                return "alternating";
            case Kind::FirstKStar:
                return "kstar:" + std::to_string(k);
            case Kind::FirstK:
                return "k:" + std::to_string(k);
        }
        return "?";
    }

    friend bool operator==(const GradingSpec&, const GradingSpec&) = default;
};

inline GradingSpec parse_grading(const std::string& s) {
    if (s == "canonical" || s == "can") return GradingSpec::canonical();
    if (s == "alternating" || s == "inf") return GradingSpec::alternating();
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        const std::string head = s.substr(0, colon);
        int k = 0;
        try {
            k = std::stoi(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error("bad grading: " + s);
        }
        if (head == "kstar") return GradingSpec::first_k_star(k);
        if (head == "k") return GradingSpec::first_k(k);
    }
    throw Error("bad grading: " + s);
}

inline GElem apply_automorphism(const GradingSpec& spec, const GElem& g) {
    const Mask neg = spec.negated(g.truncation());
    std::vector<GElem::Term> terms;
    terms.reserve(g.terms().size());
    for (const auto& [m, c] : g.terms())
        terms.push_back({m, (std::popcount(m & neg) & 1) ? g.field()->neg(c) : c});
    return GElem::from_terms(g.field(), g.truncation(), std::move(terms));
}

// 2^{-1}(g + phi(g)) for parity 0, 2^{-1}(g - phi(g)) for parity 1.
inline GElem homogeneous_component(const GradingSpec& spec, const GElem& g, int parity) {
    const auto& f = *g.field();
    const GElem img = apply_automorphism(spec, g);
    const GElem sum = parity == 0 ? g + img : g - img;
    return sum.scale(f.inv(f.from_int(2)));
}

inline bool is_homogeneous(const GradingSpec& spec, const GElem& g, int parity) {
    for (const auto& [m, c] : g.terms())
        if (spec.blade_parity(m, g.truncation()) != parity) return false;
    return true;
}

// The F-span of the parity-homogeneous blades of weight <= max_wt, indexed by
// mixed-radix coefficient tuples so that element(i) is deterministic.
class HomogeneousSpan {
public:
    HomogeneousSpan(FieldPtr f, const GradingSpec& spec, int parity, int n, int max_wt)
        : f_(std::move(f)), n_(n) {
        if (n > 30) throw Error("enumeration truncation too large");
        for (Mask m = 0; m < (Mask{1} << n); ++m)
            if (std::popcount(m) <= max_wt && spec.blade_parity(m, n) == parity)
                blades_.push_back(m);
        std::sort(blades_.begin(), blades_.end(), [](Mask a, Mask b) {
            const int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
    }

    const std::vector<Mask>& blades() const { return blades_; }

    // q^{#blades}, or nullopt when it exceeds limit.
    std::optional<unsigned long long> count(unsigned long long limit) const {
        unsigned long long c = 1;
        for (std::size_t i = 0; i < blades_.size(); ++i) {
            if (c > limit / static_cast<unsigned long long>(f_->q())) return std::nullopt;
            c *= static_cast<unsigned long long>(f_->q());
        }
        return c;
    }

    GElem element(unsigned long long index) const {
        std::vector<GElem::Term> terms;
        const auto q = static_cast<unsigned long long>(f_->q());
        for (Mask m : blades_) {
            const Elem c = static_cast<Elem>(index % q);
            index /= q;
            if (c) terms.push_back({m, c});
        }
        return GElem::from_terms(f_, n_, std::move(terms));
    }

    template <class Rng>
    GElem random(Rng& rng) const {
        std::uniform_int_distribution<int> dist(0, f_->q() - 1);
        std::vector<GElem::Term> terms;
        for (Mask m : blades_) {
            const Elem c = static_cast<Elem>(dist(rng));
            if (c) terms.push_back({m, c});
        }
        return GElem::from_terms(f_, n_, std::move(terms));
    }

private:
    FieldPtr f_;
    int n_;
    std::vector<Mask> blades_;
};

inline std::vector<GElem> enumerate_homogeneous(const FieldPtr& f, const GradingSpec& spec,
                                                int parity, int n, int max_wt,
                                                unsigned long long budget = 10'000'000ULL) {
    HomogeneousSpan span(f, spec, parity, n, max_wt);
    auto c = span.count(budget);
    if (!c) throw Error("enumeration exceeds budget");
    std::vector<GElem> out;
    out.reserve(*c);
    for (unsigned long long i = 0; i < *c; ++i) out.push_back(span.element(i));
    return out;
}

}  // namespace grassid
