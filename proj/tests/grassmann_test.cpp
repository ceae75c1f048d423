#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "grassid/grassmann.hpp"
#include "grassid/text.hpp"

using namespace grassid;

namespace {

// Sign of sorting the concatenated index list by adjacent swaps; 0 on repeats.
int sort_sign_oracle(std::vector<int> seq) {
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j + 1 < seq.size() - i; ++j) {
            if (seq[j] == seq[j + 1]) return 0;
            if (seq[j] > seq[j + 1]) {
                std::swap(seq[j], seq[j + 1]);
                sign = -sign;
            }
        }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] == seq[i + 1]) return 0;
    return sign;
}

GElem e(const FieldPtr& f, int n, std::vector<int> idx, Elem c = 1) {
    return GElem::blade(f, n, Blade::from_indices(idx), c);
}

}  // namespace

TEST(Blade, ProductExamples) {
    auto r = blade_mul(Blade::from_indices({1}), Blade::from_indices({2}));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, 1);
    EXPECT_EQ(r->second.indices(), (std::vector<int>{1, 2}));
    r = blade_mul(Blade::from_indices({2, 3}), Blade::from_indices({1}));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, 1);
    EXPECT_EQ(r->second.indices(), (std::vector<int>{1, 2, 3}));
    EXPECT_FALSE(blade_mul(Blade::from_indices({1}), Blade::from_indices({1})));
    r = blade_mul(Blade::from_indices({2}), Blade::from_indices({1}));
    EXPECT_EQ(r->first, -1);
}

TEST(Blade, SignMatchesSortingOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        Mask a = rng() & 0xFFFFFFFFFFULL, b = rng() & 0xFFFFFFFFFFULL;
        if (trial % 2) b &= ~a;
        auto ia = Blade{a}.indices(), ib = Blade{b}.indices();
        std::vector<int> seq = ia;
        seq.insert(seq.end(), ib.begin(), ib.end());
        const int expect = sort_sign_oracle(seq);
        auto r = blade_mul(Blade{a}, Blade{b});
        if (expect == 0) {
            EXPECT_FALSE(r);
        } else {
            ASSERT_TRUE(r);
            EXPECT_EQ(r->first, expect);
            EXPECT_EQ(r->second.mask, a | b);
        }
    }
    EXPECT_THROW(Blade::from_indices({2, 1}), Error);
}

TEST(GElem, ProductExamples) {
    auto f = make_field(5);
    const int n = 6;
    auto e1 = GElem::gen(f, n, 1), e2 = GElem::gen(f, n, 2), e3 = GElem::gen(f, n, 3),
         e4 = GElem::gen(f, n, 4), e5 = GElem::gen(f, n, 5);
    EXPECT_EQ(e1 * e2 - e2 * e1, e(f, n, {1, 2}, 2));
    auto s = e1 * e2 + e3 * e4;
    EXPECT_EQ(s * s, e(f, n, {1, 2, 3, 4}, 2));
    auto g = e1 + e(f, n, {2, 3}, 4);
    EXPECT_EQ(GElem::one(f, n) * g, g);
    EXPECT_EQ(g.pow(0), GElem::one(f, n));
    auto h = s + e5;
    EXPECT_EQ((h * h).dom(), e(f, n, {1, 2, 3, 4}, 2));
    EXPECT_THROW(e1 * GElem::gen(f, 5, 1), Error);
}

TEST(GElem, Anticommutation) {
    for (int p : {3, 5}) {
        auto f = make_field(p);
        const int n = 8;
        for (int i = 1; i <= n; ++i) {
            auto ei = GElem::gen(f, n, i);
            EXPECT_TRUE((ei * ei).is_zero());
            for (int j = 1; j <= n; ++j) {
                auto ej = GElem::gen(f, n, j);
                EXPECT_EQ(ei * ej, -(ej * ei));
            }
        }
    }
}

namespace {

GElem random_element(const FieldPtr& f, int n, std::mt19937_64& rng, int max_terms) {
    std::uniform_int_distribution<int> coef(0, f->q() - 1);
    std::uniform_int_distribution<int> count(0, max_terms);
    std::vector<GElem::Term> terms;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) terms.push_back({rng() & detail::full_mask(n), static_cast<Elem>(coef(rng))});
    return GElem::from_terms(f, n, terms);
}

// Product by direct definition over all term pairs, with the sorting oracle.
GElem naive_product(const GElem& a, const GElem& b) {
    const auto& f = *a.field();
    std::vector<GElem::Term> out;
    for (auto [am, ac] : a.terms())
        for (auto [bm, bc] : b.terms()) {
            auto ia = Blade{am}.indices(), ib = Blade{bm}.indices();
            ia.insert(ia.end(), ib.begin(), ib.end());
            const int s = sort_sign_oracle(ia);
            if (s == 0) continue;
            Elem v = f.mul(ac, bc);
            out.push_back({am | bm, s < 0 ? f.neg(v) : v});
        }
    return GElem::from_terms(a.field(), a.truncation(), out);
}

}  // namespace

TEST(GElem, KernelsAgreeWithNaiveProduct) {
    std::mt19937_64 rng(11);
    for (auto [p, t] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
        auto f = make_field(p, t);
        for (int n : {4, 10, 14, 20}) {
            for (int trial = 0; trial < 20; ++trial) {
                auto a = random_element(f, n, rng, trial % 2 ? 200 : 6);
                auto b = random_element(f, n, rng, trial % 3 ? 200 : 6);
                EXPECT_EQ(a * b, naive_product(a, b)) << "n=" << n;
            }
        }
    }
}

TEST(GElem, RingLaws) {
    std::mt19937_64 rng(3);
    auto f = make_field(3, 2);
    const int n = 7;
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_element(f, n, rng, 12), b = random_element(f, n, rng, 12),
             c = random_element(f, n, rng, 12);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) * c, a * c + b * c);
    }
}

TEST(GElem, DominantPart) {
    auto f = make_field(3);
    const int n = 4;
    auto g = e(f, n, {1}) + e(f, n, {2, 3});
    EXPECT_EQ(g.wt(), 2);
    EXPECT_EQ(g.dom(), e(f, n, {2, 3}));
    EXPECT_EQ(g.supp(), Blade::from_indices({1, 2, 3}).mask);
    auto one = GElem::one(f, n);
    EXPECT_EQ(one.wt(), 0);
    EXPECT_EQ(one.dom(), one);
    auto h = e(f, n, {1, 2}, 2) + e(f, n, {3, 4});
    EXPECT_EQ(h.dom(), h);
    auto zero = GElem::zero(f, n);
    EXPECT_EQ(zero.wt(), 0);
    EXPECT_TRUE(zero.dom().is_zero());
    EXPECT_EQ(zero.supp(), 0u);
}

TEST(Grading, AutomorphismExamples) {
    auto f = make_field(5);
    const int n = 4;
    EXPECT_EQ(apply_automorphism(GradingSpec::canonical(), e(f, n, {1, 2})), e(f, n, {1, 2}));
    EXPECT_EQ(apply_automorphism(GradingSpec::first_k(1), e(f, n, {1, 2})), -e(f, n, {1, 2}));
    EXPECT_EQ(apply_automorphism(GradingSpec::alternating(), e(f, n, {1, 3})), e(f, n, {1, 3}));
    EXPECT_EQ(apply_automorphism(GradingSpec::alternating(), e(f, n, {2})), e(f, n, {2}));
    EXPECT_EQ(apply_automorphism(GradingSpec::alternating(), e(f, n, {3})), -e(f, n, {3}));
    EXPECT_EQ(apply_automorphism(GradingSpec::first_k_star(2), e(f, n, {2, 3})), -e(f, n, {2, 3}));
    EXPECT_EQ(apply_automorphism(GradingSpec::first_k_star(0), e(f, n, {1})), e(f, n, {1}));
}

TEST(Grading, HomogeneousComponents) {
    auto f = make_field(3);
    const int n = 4;
    auto g = e(f, n, {1}) + e(f, n, {1, 2});
    EXPECT_EQ(homogeneous_component(GradingSpec::canonical(), g, 1), e(f, n, {1}));
    EXPECT_EQ(homogeneous_component(GradingSpec::canonical(), g, 0), e(f, n, {1, 2}));
    auto h = e(f, n, {1}) + e(f, n, {2});
    EXPECT_EQ(homogeneous_component(GradingSpec::first_k_star(1), h, 1), e(f, n, {1}));
    for (auto spec : {GradingSpec::canonical(), GradingSpec::alternating(), GradingSpec::first_k_star(2),
                      GradingSpec::first_k(1)})
        EXPECT_EQ(homogeneous_component(spec, GElem::one(f, n), 0), GElem::one(f, n));
}

TEST(Grading, HomomorphismInvolutionAndDegrees) {
    std::mt19937_64 rng(5);
    auto f = make_field(5);
    const int n = 8;
    for (auto spec : {GradingSpec::canonical(), GradingSpec::alternating(), GradingSpec::first_k_star(3),
                      GradingSpec::first_k(2), GradingSpec::first_k_star(0)}) {
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_element(f, n, rng, 20), b = random_element(f, n, rng, 20);
            EXPECT_EQ(apply_automorphism(spec, a * b), apply_automorphism(spec, a) * apply_automorphism(spec, b));
            EXPECT_EQ(apply_automorphism(spec, apply_automorphism(spec, a)), a);
            auto a0 = homogeneous_component(spec, a, 0), a1 = homogeneous_component(spec, a, 1);
            EXPECT_EQ(a0 + a1, a);
            EXPECT_EQ(apply_automorphism(spec, a0), a0);
            EXPECT_EQ(apply_automorphism(spec, a1), -a1);
            for (int i : {0, 1})
                for (int j : {0, 1}) {
                    auto prod = homogeneous_component(spec, a, i) * homogeneous_component(spec, b, j);
                    EXPECT_TRUE(is_homogeneous(spec, prod, i ^ j));
                }
        }
    }
}

TEST(Grading, Enumeration) {
    auto f = make_field(3);
    EXPECT_EQ(enumerate_homogeneous(f, GradingSpec::canonical(), 1, 2, 1).size(), 9u);
    auto even = enumerate_homogeneous(f, GradingSpec::canonical(), 0, 2, 2);
    EXPECT_EQ(even.size(), 9u);
    for (const auto& g : even) EXPECT_TRUE(is_homogeneous(GradingSpec::canonical(), g, 0));
    auto odd0 = enumerate_homogeneous(f, GradingSpec::first_k_star(0), 1, 4, 4);
    ASSERT_EQ(odd0.size(), 1u);
    EXPECT_TRUE(odd0[0].is_zero());
    EXPECT_THROW(enumerate_homogeneous(f, GradingSpec::canonical(), 0, 12, 12, 1000), Error);
}

namespace {

// Sum over S_p of (sgn sigma) x_sigma(1)...x_sigma(p); unsigned when signed is false.
GElem alternating_sum(const std::vector<GElem>& xs, bool signed_sum = true) {
    std::vector<int> perm(xs.size());
    std::iota(perm.begin(), perm.end(), 0);
    const auto& f = xs[0].field();
    GElem acc = GElem::zero(f, xs[0].truncation());
    do {
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
        GElem prod = GElem::one(f, xs[0].truncation());
        for (int i : perm) prod = prod * xs[i];
        acc = (signed_sum && inv % 2) ? acc - prod : acc + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace

// Regev: the standard polynomial of degree p, x^p on the non-unitary part,
// and (alpha + a)^p = alpha^p.
TEST(GElem, FiniteCharacteristicIdentities) {
    std::mt19937_64 rng(19);
    for (auto [p, t] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
        auto f = make_field(p, t);
        const int n = 8;
        for (int trial = 0; trial < 20; ++trial) {
            // The identity of G* is the symmetric linearization of x^p.
            std::vector<GElem> xs;
            for (int i = 0; i < p; ++i) {
                auto x = random_element(f, n, rng, 15);
                xs.push_back(x - GElem::scalar(f, n, x.scalar_part()));
            }
            EXPECT_TRUE(alternating_sum(xs, false).is_zero());
            auto a = random_element(f, n, rng, 30);
            a = a - GElem::scalar(f, n, a.scalar_part());
            EXPECT_TRUE(a.pow(p).is_zero());
            const Elem alpha = static_cast<Elem>(rng() % f->q());
            EXPECT_EQ((GElem::scalar(f, n, alpha) + a).pow(p), GElem::scalar(f, n, f->pow(alpha, p)));
            auto x = random_element(f, n, rng, 30);
            EXPECT_EQ(x.pow(static_cast<unsigned long long>(p) * f->q()), x.pow(p));
        }
    }
}

// The signed standard polynomial of degree p is not an identity of G or G*:
// with c = e1e2 central, s_3(c, e3, e4) = c[e3, e4].
TEST(GElem, StandardPolynomialCounterexamples) {
    auto f = make_field(3);
    const int n = 4;
    EXPECT_EQ(alternating_sum({GElem::one(f, n), GElem::gen(f, n, 1), GElem::gen(f, n, 2)}), e(f, n, {1, 2}, 2));
    EXPECT_EQ(alternating_sum({e(f, n, {1, 2}), GElem::gen(f, n, 3), GElem::gen(f, n, 4)}),
              e(f, n, {1, 2, 3, 4}, 2));
    EXPECT_TRUE(alternating_sum({GElem::gen(f, n, 1), GElem::gen(f, n, 2), GElem::gen(f, n, 3)}).is_zero());
}

TEST(GElem, TextRoundTrip) {
    auto f = make_field(5);
    auto g = parse_element("2*e1e2 + e3", f, 4);
    EXPECT_EQ(g, e(f, 4, {1, 2}, 2) + e(f, 4, {3}));
    EXPECT_EQ(to_string(g), "e3 + 2*e1e2");
    EXPECT_EQ(parse_element(to_string(g), f, 4), g);
    EXPECT_EQ(to_string(GElem::one(f, 4)), "1");
    EXPECT_EQ(to_string(GElem::zero(f, 4)), "0");
    EXPECT_EQ(parse_element("e2e1", f, 4), -e(f, 4, {1, 2}));
    EXPECT_THROW(parse_element("e5", f, 4), Error);
    std::mt19937_64 rng(2);
    auto f9 = make_field(3, 2);
    for (int i = 0; i < 200; ++i) {
        auto x = random_element(f9, 6, rng, 10);
        EXPECT_EQ(parse_element(to_string(x), f9, 6), x) << to_string(x);
    }
}
