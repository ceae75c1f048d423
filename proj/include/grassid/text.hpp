#pragma once

// Text formats.
//
// Polynomials:  z1^2*[y1,z2,y1] - 2*y1^4   (juxtaposition or '*' for products,
//               '[f,g,...]' left-normed commutators, 'a' the field generator
//               when t > 1)
// Elements:     2*e1e2 + e3                (blades as e-indices, '1' for 1_G)

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "grassid/field.hpp"
#include "grassid/freealg.hpp"
#include "grassid/grassmann.hpp"

namespace grassid {

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t pos, const std::string& what)
        : Error("syntax error at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// ---------------------------------------------------------------------------
// Scalars

struct CoeffText {
    bool negative = false;
    std::string magnitude;  // "1" for +-1
    bool unit = false;      // magnitude is exactly 1
};

// Element of F as a polynomial in the generator symbol 'a', highest power first.
inline std::string field_element_text(const Field& f, Elem c) {
    const auto co = f.coeffs(c);
    std::string out;
    for (int i = f.t() - 1; i >= 0; --i) {
        if (co[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(co[i]);
        } else {
            if (co[i] != 1) out += std::to_string(co[i]) + "*";
            out += "a";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

inline CoeffText coeff_text(const Field& f, Elem c) {
    CoeffText t;
    if (f.in_prime_field(c)) {
        int v = static_cast<int>(c);
        if (v > (f.p() - 1) / 2) {
            t.negative = true;
            v = f.p() - v;
        }
        t.magnitude = std::to_string(v);
        t.unit = v == 1;
        return t;
    }
    const std::string s = field_element_text(f, c);
    t.magnitude = s.find(' ') == std::string::npos ? s : "(" + s + ")";
    return t;
}

// Joins signed terms: body[i] is printed with coefficient coeffs[i].
inline std::string join_signed(const Field& f, const std::vector<std::pair<Elem, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, body] : terms) {
        const CoeffText ct = coeff_text(f, c);
        if (first)
            out += ct.negative ? "-" : "";
        else
            out += ct.negative ? " - " : " + ";
        if (body.empty() || body == "1")
            out += ct.magnitude;
        else if (ct.unit)
            out += body;
        else
            out += ct.magnitude + "*" + body;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generic expression parser

namespace detail {

// Leaf semantics: constant(Elem) -> T, variable(char, int index) -> T,
// commutator(vector<T>) -> T.  T supports +, -, *, unary -.
template <class T, class Leaf>
class ExprParser {
public:
    ExprParser(const std::string& text, const Field& f, Leaf leaf, std::string var_letters)
        : s_(text), f_(f), leaf_(std::move(leaf)), letters_(std::move(var_letters)) {}

    T parse() {
        T v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool starts_atom() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '[' ||
               (c == 'a' && f_.t() > 1) || (c != '\0' && letters_.find(c) != std::string::npos);
    }

    long long number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        if (pos_ - start > 18) fail("integer too large");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    T expr() {
        bool negate = false;
        const char c = peek();
        if (c == '-' || c == '+') {
            negate = c == '-';
            ++pos_;
        }
        T acc = term();
        if (negate) acc = -acc;
        while (true) {
            const char op = peek();
            if (op != '+' && op != '-') break;
            ++pos_;
            T rhs = term();
            acc = op == '+' ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    T term() {
        T acc = power();
        while (true) {
            if (peek() == '*') {
                ++pos_;
                acc = acc * power();
            } else if (starts_atom()) {
                acc = acc * power();
            } else {
                break;
            }
        }
        return acc;
    }

    T power() {
        T base = atom();
        if (peek() == '^') {
            ++pos_;
            const long long e = number();
            if (e > 4096) fail("exponent too large");
            T r = leaf_.constant(1);
            for (long long i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    T atom() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return leaf_.constant(f_.from_int(number()));
        if (c == '(') {
            ++pos_;
            T v = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (c == '[') {
            const std::size_t open = pos_;
            ++pos_;
            std::vector<T> args;
            args.push_back(expr());
            while (peek() == ',') {
                ++pos_;
                args.push_back(expr());
            }
            if (peek() != ']') fail("expected ']'");
            ++pos_;
            if (args.size() < 2) throw SyntaxError(open, "commutator needs at least two arguments");
            return leaf_.commutator(args);
        }
        if (c == 'a' && f_.t() > 1) {
            ++pos_;
            return leaf_.constant(f_.generator());
        }
        if (c != '\0' && letters_.find(c) != std::string::npos) {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(pos_ < s_.size() ? s_[pos_] : '\0')))
                fail(std::string("expected index after '") + c + "'");
            const long long idx = number();
            if (idx < 1 || idx > 1'000'000) fail("variable index out of range");
            return leaf_.variable(c, static_cast<int>(idx));
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const Field& f_;
    Leaf leaf_;
    std::string letters_;
    std::size_t pos_ = 0;
};

struct PolyLeaf {
    FieldPtr f;
    FreePoly constant(Elem c) const { return FreePoly::constant(f, c); }
    FreePoly variable(char letter, int idx) const {
        return FreePoly::var(f, letter == 'y' ? Var::y(idx) : Var::z(idx));
    }
    FreePoly commutator(const std::vector<FreePoly>& args) const { return grassid::commutator(args); }
};

struct ElemLeaf {
    FieldPtr f;
    int n;
    GElem constant(Elem c) const { return GElem::scalar(f, n, c); }
    GElem variable(char, int idx) const {
        if (idx > n) throw Error("generator e" + std::to_string(idx) + " outside truncation");
        return GElem::gen(f, n, idx);
    }
    GElem commutator(const std::vector<GElem>& args) const {
        GElem acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) acc = grassid::commutator(acc, args[i]);
        return acc;
    }
};

}  // namespace detail

inline FreePoly parse_poly(const std::string& text, const FieldPtr& f) {
    detail::ExprParser<FreePoly, detail::PolyLeaf> p(text, *f, detail::PolyLeaf{f}, "yz");
    return p.parse();
}

inline GElem parse_element(const std::string& text, const FieldPtr& f, int n) {
    detail::ExprParser<GElem, detail::ElemLeaf> p(text, *f, detail::ElemLeaf{f, n}, "e");
    return p.parse();
}

// ---------------------------------------------------------------------------
// Printers

inline std::string word_text(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "*";
        out += w[i].name();
    }
    return out;
}

inline std::string to_string(const FreePoly& p) {
    std::vector<std::pair<Elem, std::string>> terms;
    for (const auto& [w, c] : p.terms()) terms.push_back({c, word_text(w)});
    return join_signed(*p.field(), terms);
}

inline std::string blade_text(Mask m) {
    if (m == 0) return "1";
    std::string out;
    for (int i : Blade{m}.indices()) out += "e" + std::to_string(i);
    return out;
}

inline std::string to_string(const GElem& g) {
    std::vector<GElem::Term> sorted = g.terms();
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const int pa = std::popcount(a.first), pb = std::popcount(b.first);
        if (pa != pb) return pa < pb;
        return Blade{a.first}.indices() < Blade{b.first}.indices();
    });
    std::vector<std::pair<Elem, std::string>> terms;
    for (const auto& [m, c] : sorted) terms.push_back({c, blade_text(m)});
    return join_signed(*g.field(), terms);
}

inline std::string mask_set_text(Mask m) {
    std::string out = "{";
    bool first = true;
    for (int i : Blade{m}.indices()) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

}  // namespace grassid
