#pragma once

// Arithmetic in GF(p^t), p an odd prime, polynomial basis over Z_p.
//
// Elements are encoded as integers: the coefficient vector (c_0, ..., c_{t-1})
// of c_0 + c_1 x + ... + c_{t-1} x^{t-1} maps to sum c_i p^i.  Field sizes are
// small, so addition and multiplication are table lookups.

#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace grassid {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Elem = std::uint32_t;

namespace detail {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over Z_p as constant-first coefficient vectors, no trailing zeros.
using ZpPoly = std::vector<int>;

inline void trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
    int r = 1, base = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

// Remainder of a modulo b (b nonzero).
inline ZpPoly poly_mod(ZpPoly a, const ZpPoly& b, int p) {
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    const int lead_inv = inv_mod(b.back(), p);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int factor = a.back() * lead_inv % p;
        for (int i = 0; i <= db; ++i)
            a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

// Irreducibility by trial division against every monic polynomial of degree
// 1..deg/2.  Fine for the small degrees used here.
inline bool is_irreducible(const ZpPoly& m, int p) {
    const int deg = static_cast<int>(m.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    for (int d = 1; d <= deg / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            ZpPoly div(d + 1);
            long c = code;
            for (int i = 0; i < d; ++i) {
                div[i] = static_cast<int>(c % p);
                c /= p;
            }
            div[d] = 1;
            if (poly_mod(m, div, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class Field {
public:
    static constexpr int kMaxOrder = 1024;

    // modulus: constant-first coefficients of a monic degree-t polynomial.
    // Empty modulus selects the default (see default_modulus).
    Field(int p, int t, std::vector<int> modulus = {}) : p_(p), t_(t) {
        if (p <= 2 || !detail::is_prime(p))
            throw Error("field characteristic must be an odd prime, got " + std::to_string(p));
        if (t < 1) throw Error("extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < t; ++i) {
            q_ *= p;
            if (q_ > kMaxOrder) throw Error("field order exceeds " + std::to_string(kMaxOrder));
        }
        if (modulus.empty()) modulus = default_modulus(p, t);
        for (auto& c : modulus) c = ((c % p) + p) % p;
        detail::trim(modulus);
        if (static_cast<int>(modulus.size()) != t + 1)
            throw Error("modulus must have degree " + std::to_string(t));
        if (modulus.back() != 1) throw Error("modulus must be monic");
        if (!detail::is_irreducible(modulus, p)) throw Error("modulus is reducible over Z_p");
        modulus_ = std::move(modulus);
        build_tables();
    }

    // Smallest irreducible monic polynomial of degree t, ordering candidates by
    // the integer sum c_i p^i of their lower coefficients.
    static std::vector<int> default_modulus(int p, int t) {
        if (t == 1) return {0, 1};
        long count = 1;
        for (int i = 0; i < t; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<int> m(t + 1);
            long c = code;
            for (int i = 0; i < t; ++i) {
                m[i] = static_cast<int>(c % p);
                c /= p;
            }
            m[t] = 1;
            if (detail::is_irreducible(m, p)) return m;
        }
        throw Error("no irreducible polynomial found");
    }

    int p() const { return p_; }
    int t() const { return t_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem inv(Elem a) const {
        if (a == 0) throw Error("inverse of zero");
        return pow(a, static_cast<unsigned long long>(q_ - 2));
    }

    Elem pow(Elem a, unsigned long long e) const {
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // Image of an integer under Z -> F.
    Elem from_int(long long n) const {
        long long r = n % p_;
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    // Element from constant-first coefficients; longer inputs are reduced
    // modulo the field polynomial.
    Elem from_coeffs(const std::vector<long long>& coeffs) const {
        detail::ZpPoly a;
        for (auto c : coeffs) a.push_back(static_cast<int>(from_int(c)));
        a = detail::poly_mod(a, modulus_, p_);
        return encode(a);
    }

    std::vector<int> coeffs(Elem a) const {
        std::vector<int> c(t_);
        for (int i = 0; i < t_; ++i) {
            c[i] = static_cast<int>(a % p_);
            a /= p_;
        }
        return c;
    }

    // The class of x in Z_p[x]/(modulus).  For t == 1 the field has no
    // generator symbol and this returns 0.
    Elem generator() const { return t_ == 1 ? 0 : static_cast<Elem>(p_); }

    bool in_prime_field(Elem a) const { return a < static_cast<Elem>(p_); }

    // All q elements, 0 first and 1 second.
    std::vector<Elem> elements() const {
        std::vector<Elem> out(q_);
        for (int i = 0; i < q_; ++i) out[i] = static_cast<Elem>(i);
        return out;
    }

    bool operator==(const Field& o) const {
        return p_ == o.p_ && t_ == o.t_ && modulus_ == o.modulus_;
    }

    std::string describe() const {
        std::string s = "p=" + std::to_string(p_) + ",t=" + std::to_string(t_);
        if (t_ > 1) {
            s += ",mod=";
            for (std::size_t i = 0; i < modulus_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(modulus_[i]);
            }
        }
        return s;
    }

private:
    Elem encode(const detail::ZpPoly& a) const {
        Elem code = 0, base = 1;
        for (int i = 0; i < t_; ++i) {
            const int c = i < static_cast<int>(a.size()) ? a[i] : 0;
            code += static_cast<Elem>(c) * base;
            base *= static_cast<Elem>(p_);
        }
        return code;
    }

    void build_tables() {
        const std::size_t qq = static_cast<std::size_t>(q_) * q_;
        add_.resize(qq);
        mul_.resize(qq);
        neg_.resize(q_);
        std::vector<detail::ZpPoly> polys(q_);
        for (int a = 0; a < q_; ++a) {
            auto c = coeffs(static_cast<Elem>(a));
            polys[a] = detail::ZpPoly(c.begin(), c.end());
        }
        for (int a = 0; a < q_; ++a) {
            detail::ZpPoly n(t_);
            for (int i = 0; i < t_; ++i) n[i] = (p_ - polys[a][i]) % p_;
            neg_[a] = static_cast<std::uint16_t>(encode(n));
            for (int b = 0; b < q_; ++b) {
                detail::ZpPoly s(t_);
                for (int i = 0; i < t_; ++i) s[i] = (polys[a][i] + polys[b][i]) % p_;
                add_[a * q_ + b] = static_cast<std::uint16_t>(encode(s));
                detail::ZpPoly prod(2 * t_, 0);
                for (int i = 0; i < t_; ++i)
                    for (int j = 0; j < t_; ++j)
                        prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p_;
                mul_[a * q_ + b] =
                    static_cast<std::uint16_t>(encode(detail::poly_mod(prod, modulus_, p_)));
            }
        }
    }

    int p_;
    int t_;
    int q_ = 1;
    std::vector<int> modulus_;
    std::vector<std::uint16_t> add_, mul_, neg_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(int p, int t = 1, std::vector<int> modulus = {}) {
    return std::make_shared<const Field>(p, t, std::move(modulus));
}

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() != b.get() && !(*a == *b)) throw Error("mismatched fields");
}

// Value-type wrapper around an element code and its field.
class Scalar {
public:
    Scalar(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {}

    static Scalar make(FieldPtr f, const std::vector<long long>& coeffs) {
        if (static_cast<int>(coeffs.size()) > f->t())
            throw Error("too many coefficients for extension degree");
        const Elem v = f->from_coeffs(coeffs);
        return {std::move(f), v};
    }

    const FieldPtr& field() const { return f_; }
    Elem code() const { return v_; }
    std::vector<int> coeffs() const { return f_->coeffs(v_); }
    bool is_zero() const { return v_ == 0; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        require_same_field(a.f_, b.f_);
        return {a.f_, a.f_->add(a.v_, b.v_)};
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        require_same_field(a.f_, b.f_);
        return {a.f_, a.f_->sub(a.v_, b.v_)};
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        require_same_field(a.f_, b.f_);
        return {a.f_, a.f_->mul(a.v_, b.v_)};
    }
    Scalar operator-() const { return {f_, f_->neg(v_)}; }
    Scalar inv() const { return {f_, f_->inv(v_)}; }
    Scalar pow(unsigned long long e) const { return {f_, f_->pow(v_, e)}; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.v_ == b.v_ && (a.f_.get() == b.f_.get() || *a.f_ == *b.f_);
    }

private:
    FieldPtr f_;
    Elem v_;
};

inline std::vector<Scalar> enumerate(const FieldPtr& f) {
    std::vector<Scalar> out;
    out.reserve(f->q());
    for (Elem e : f->elements()) out.emplace_back(f, e);
    return out;
}

// Parses "p=3,t=2,mod=1,0,1" (modulus constant-first, optional).
inline FieldPtr parse_field(const std::string& spec) {
    int p = 0, t = 1;
    std::vector<int> mod;
    std::string key;
    std::size_t i = 0;
    auto read_int = [&](std::size_t& pos) {
        std::size_t end = pos;
        if (end < spec.size() && spec[end] == '-') ++end;
        while (end < spec.size() && std::isdigit(static_cast<unsigned char>(spec[end]))) ++end;
        if (end == pos) throw Error("bad field spec: " + spec);
        int v = std::stoi(spec.substr(pos, end - pos));
        pos = end;
        return v;
    };
    while (i < spec.size()) {
        auto eq = spec.find('=', i);
        if (eq == std::string::npos) throw Error("bad field spec: " + spec);
        key = spec.substr(i, eq - i);
        i = eq + 1;
        if (key == "p") {
            p = read_int(i);
        } else if (key == "t") {
            t = read_int(i);
        } else if (key == "mod") {
            mod.push_back(read_int(i));
            while (i < spec.size() && spec[i] == ',' && i + 1 < spec.size() &&
                   (std::isdigit(static_cast<unsigned char>(spec[i + 1])) || spec[i + 1] == '-')) {
                ++i;
                mod.push_back(read_int(i));
            }
        } else {
            throw Error("unknown field key: " + key);
        }
        if (i < spec.size()) {
            if (spec[i] != ',') throw Error("bad field spec: " + spec);
            ++i;
        }
    }
    return make_field(p, t, mod);
}

}  // namespace grassid
