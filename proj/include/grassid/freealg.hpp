#pragma once

// The free Z2-graded algebra F<Y u Z>: even variables y_i, odd variables z_j.

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "grassid/field.hpp"
#include "grassid/grassmann.hpp"

namespace grassid {

struct Var {
    enum class Kind : std::uint8_t { Even = 0, Odd = 1 };
    Kind kind = Kind::Even;
    int index = 1;

    static Var y(int i) { return make(Kind::Even, i); }
    static Var z(int i) { return make(Kind::Odd, i); }
    static Var make(Kind k, int i) {
        if (i < 1) throw Error("variable index must be >= 1");
        return {k, i};
    }

    bool odd() const { return kind == Kind::Odd; }
    int parity() const { return odd() ? 1 : 0; }
    std::string name() const { return (odd() ? "z" : "y") + std::to_string(index); }

    // y1 < y2 < ... < z1 < z2 < ...
    friend auto operator<=>(const Var&, const Var&) = default;
};

using Word = std::vector<Var>;

inline int word_parity(const Word& w) {
    int par = 0;
    for (const auto& v : w) par ^= v.parity();
    return par;
}

// Map-key order on words: shorter first, then letter by letter.
struct WordKeyLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

class FreePoly {
public:
    using Terms = std::map<Word, Elem, WordKeyLess>;

    explicit FreePoly(FieldPtr f) : f_(std::move(f)) {}

    static FreePoly zero(FieldPtr f) { return FreePoly(std::move(f)); }
    static FreePoly constant(FieldPtr f, Elem c) {
        FreePoly p(std::move(f));
        p.add_term({}, c);
        return p;
    }
    static FreePoly one(FieldPtr f) { return constant(std::move(f), 1); }
    static FreePoly var(FieldPtr f, Var v) { return word(std::move(f), {v}); }
    static FreePoly word(FieldPtr f, Word w, Elem c = 1) {
        FreePoly p(std::move(f));
        p.add_term(std::move(w), c);
        return p;
    }

    const FieldPtr& field() const { return f_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Word& w, Elem c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second = f_->add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Elem coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }

    FreePoly& operator+=(const FreePoly& o) {
        require_same_field(f_, o.f_);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    FreePoly& operator-=(const FreePoly& o) {
        require_same_field(f_, o.f_);
        for (const auto& [w, c] : o.terms_) add_term(w, f_->neg(c));
        return *this;
    }
    friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
    friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
    FreePoly operator-() const { return scale(f_->neg(1)); }

    FreePoly scale(Elem c) const {
        FreePoly out(f_);
        if (c == 0) return out;
        for (const auto& [w, v] : terms_) out.terms_.emplace(w, f_->mul(v, c));
        return out;
    }

    friend FreePoly operator*(const FreePoly& a, const FreePoly& b) {
        require_same_field(a.f_, b.f_);
        FreePoly out(a.f_);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                out.add_term(w, a.f_->mul(ca, cb));
            }
        return out;
    }

    FreePoly pow(unsigned e) const {
        FreePoly r = one(f_);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const FreePoly& a, const FreePoly& b) { return a.terms_ == b.terms_; }

    std::set<Var> variables() const {
        std::set<Var> vs;
        for (const auto& [w, c] : terms_) vs.insert(w.begin(), w.end());
        return vs;
    }

    // Every variable of the polynomial occurs in every term.
    bool is_essential() const {
        const auto vs = variables();
        for (const auto& [w, c] : terms_) {
            std::set<Var> in(w.begin(), w.end());
            if (in.size() != vs.size()) return false;
        }
        return true;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
        return d;
    }

private:
    FieldPtr f_;
    Terms terms_;
};

// Left-normed commutator [a1, a2, ..., an] = [[a1, ..., a_{n-1}], an].
inline FreePoly commutator(const std::vector<FreePoly>& args) {
    if (args.size() < 2) throw Error("commutator needs at least two arguments");
    FreePoly acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = acc * args[i] - args[i] * acc;
    return acc;
}

inline FreePoly commutator(const FreePoly& a, const FreePoly& b) { return commutator({a, b}); }

// Graded endomorphism: unassigned variables map to themselves.
using PolyAssignment = std::map<Var, FreePoly>;

inline void check_parity_preserving(const PolyAssignment& a) {
    for (const auto& [v, img] : a)
        for (const auto& [w, c] : img.terms())
            if (word_parity(w) != v.parity())
                throw Error("substitution for " + v.name() + " is not of matching parity");
}

inline FreePoly substitute(const FreePoly& f, const PolyAssignment& a) {
    check_parity_preserving(a);
    const auto& field = f.field();
    FreePoly out(field);
    for (const auto& [w, c] : f.terms()) {
        FreePoly term = FreePoly::constant(field, c);
        for (const auto& v : w) {
            auto it = a.find(v);
            term = term * (it == a.end() ? FreePoly::var(field, v) : it->second);
        }
        out += term;
    }
    return out;
}

// Graded homomorphism into a graded Grassmann truncation.
struct GAssignment {
    GradingSpec grading;
    std::map<Var, GElem> values;
};

inline void check_assignment(const GAssignment& a) {
    for (const auto& [v, g] : a.values)
        if (!is_homogeneous(a.grading, g, v.parity()))
            throw Error("value for " + v.name() + " is not homogeneous of degree " +
                        std::to_string(v.parity()));
}

namespace detail {

// Evaluates words in key order, reusing the product of the longest common
// prefix with the previous word.
class WordEvaluator {
public:
    WordEvaluator(const std::map<Var, GElem>& values, const GElem& one)
        : values_(values), one_(one) {}

    const GElem& eval(const Word& w) {
        std::size_t common = 0;
        while (common < w.size() && common < word_.size() && w[common] == word_[common]) ++common;
        word_.resize(common);
        prefix_.erase(prefix_.begin() + static_cast<std::ptrdiff_t>(common), prefix_.end());
        for (std::size_t i = common; i < w.size(); ++i) {
            auto it = values_.find(w[i]);
            if (it == values_.end()) throw Error("no value assigned to " + w[i].name());
            const GElem& prev = i == 0 ? one_ : prefix_.back();
            prefix_.push_back(prev * it->second);
            word_.push_back(w[i]);
        }
        return w.empty() ? one_ : prefix_.back();
    }

private:
    const std::map<Var, GElem>& values_;
    const GElem& one_;
    Word word_;
    std::vector<GElem> prefix_;
};

}  // namespace detail

inline GElem evaluate_unchecked(const FreePoly& f, const std::map<Var, GElem>& values,
                                const FieldPtr& field, int n) {
    GElem one = GElem::one(field, n);
    GElem acc = GElem::zero(field, n);
    // Lexicographic order maximizes prefix reuse.
    std::vector<std::pair<const Word*, Elem>> order;
    for (const auto& [w, c] : f.terms()) order.push_back({&w, c});
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return *a.first < *b.first; });
    detail::WordEvaluator ev(values, one);
    for (const auto& [w, c] : order) acc = acc + ev.eval(*w).scale(c);
    return acc;
}

inline GElem evaluate(const FreePoly& f, const GAssignment& a) {
    check_assignment(a);
    if (a.values.empty()) {
        if (!f.variables().empty()) throw Error("no value assigned to " + f.variables().begin()->name());
        throw Error("empty assignment: truncation unknown");
    }
    const GElem& any = a.values.begin()->second;
    for (const auto& v : f.variables())
        if (!a.values.count(v)) throw Error("no value assigned to " + v.name());
    return evaluate_unchecked(f, a.values, any.field(), any.truncation());
}

}  // namespace grassid
