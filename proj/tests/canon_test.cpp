#include <gtest/gtest.h>

#include "grassid/canon.hpp"
#include "grassid/reduce.hpp"
#include "grassid/sample.hpp"
#include "grassid/text.hpp"

using namespace grassid;

namespace {

PrTerm T(const std::string& s) {
    auto [sign, u] = parse_term(s);
    EXPECT_EQ(sign, 1) << s;
    return u;
}

FreePoly P(const std::string& s, const FieldPtr& f) { return parse_poly(s, f); }

std::vector<IdealSpec> all_specs(const FieldPtr& f) {
    return {IdealSpec::i1(f),    IdealSpec::i2(f),    IdealSpec::i3(f, 0), IdealSpec::i3(f, 1),
            IdealSpec::i3(f, 2), IdealSpec::i4(f, 1), IdealSpec::i4(f, 2), IdealSpec::i4(f, 3)};
}

bool same_value(const FreePoly& a, const FreePoly& b, const GAssignment& as) {
    const auto& any = as.values.begin()->second;
    return evaluate_unchecked(a, as.values, a.field(), any.truncation()) ==
           evaluate_unchecked(b, as.values, a.field(), any.truncation());
}

}  // namespace

TEST(TermStats, Examples) {
    auto s = term_stats(T("y1^2*z3*[y2,z1]"));
    EXPECT_EQ(s.deg_y, 3);
    EXPECT_EQ(s.deg_z, 2);
    ASSERT_TRUE(s.pr_z);
    EXPECT_EQ(*s.pr_z, Var::z(3));
    EXPECT_EQ(s.yym, std::set<Var>{Var::y(1)});

    auto t = term_stats(T("y1"));
    EXPECT_EQ(t.deg, 1);
    EXPECT_FALSE(t.pr_z);

    auto r = term_stats(T("z1*z2*[z3,z4]"));
    EXPECT_EQ(r.deg_z, 4);
    EXPECT_TRUE(r.yym.empty());
}

TEST(SSClass, Examples) {
    const int p = 3;
    EXPECT_TRUE(ss_class(T("y1^2*z1"), p, 0).ss0);
    EXPECT_FALSE(ss_class(T("y1^3*z1"), p, 0).ss);
    EXPECT_FALSE(ss_class(T("z1^2"), p, 0).ss0);
    EXPECT_FALSE(ss_class(T("z1*z2*z3*[y1,y2]"), p, 2).ss2);
    EXPECT_TRUE(ss_class(T("z1*[y1,z1]"), p, 2).ss3);
    // deg_Z(beg) + deg_Y(psi) = k+1 with pr_z inside psi
    EXPECT_TRUE(ss_class(T("z1*z2*[z1,z3]"), p, 1).ss2);
    EXPECT_FALSE(ss_class(T("z1*z2*[z1,z3]"), p, 1).ss3);
    EXPECT_TRUE(ss_class(T("z1*z2*[z2,z3]"), p, 1).ss3);
}

TEST(SSOrder, Examples) {
    EXPECT_EQ(ss_compare(T("y1"), T("y1^2")), std::strong_ordering::less);
    EXPECT_EQ(ss_compare(T("y1*z1"), T("y2*z1")), std::strong_ordering::less);
    EXPECT_EQ(ss_compare(T("y1"), T("y2")), std::strong_ordering::less);
    EXPECT_EQ(ss_compare(T("z1*[y1,y2]"), T("z1*[y1,y2]")), std::strong_ordering::equal);
    EXPECT_EQ(order_name(ss_compare(T("y2"), T("y1"))), "Greater");
}

TEST(SSOrder, TotalOrderLaws) {
    Rng rng(11);
    TermShapeLimits lim{2, 2, 2};
    for (int i = 0; i < 3000; ++i) {
        PrTerm a = random_term(rng, lim), b = random_term(rng, lim), c = random_term(rng, lim);
        const auto ab = ss_compare(a, b), ba = ss_compare(b, a);
        EXPECT_EQ(ab == 0, a == b);
        EXPECT_EQ(ab < 0, ba > 0);
        if (ab <= 0 && ss_compare(b, c) <= 0) {
            EXPECT_TRUE(ss_compare(a, c) <= 0);
        }
    }
}

TEST(BadTerms, Examples) {
    auto f = make_field(3);
    auto one = FreePoly::one(f);
    CanonicalForm single{IdealSpec::i4(f, 2), {{one, T("y1*z1^2*[y2,z2]")}}};
    EXPECT_TRUE(bad_terms(single).empty());
    EXPECT_FALSE(lbt(single));

    CanonicalForm two{IdealSpec::i2(f), {{one, T("y1")}, {one, T("y1*y2")}}};
    EXPECT_EQ(leading_term(two), T("y1*y2"));

    // Same multidegree, pr_z exponent lowered by one, y exponents not below LT's.
    const PrTerm lt = T("y1*z1^2*[y2,z2]");
    const PrTerm u = T("y1*y2*z1*[z1,z2]");
    EXPECT_TRUE(is_bad_term(u, lt));
    EXPECT_TRUE(ss_compare(u, lt) < 0);
    EXPECT_FALSE(is_bad_term(T("y2*z1^2*[y1,z2]"), lt));
    CanonicalForm cf{IdealSpec::i4(f, 2), {{one, lt}, {one, u}}};
    EXPECT_EQ(leading_term(cf), lt);
    ASSERT_TRUE(lbt(cf));
    EXPECT_EQ(*lbt(cf), u);
    EXPECT_THROW(leading_term(CanonicalForm{IdealSpec::i2(f), {}}), Error);
}

TEST(Generators, FTandRT) {
    auto f = make_field(5);
    std::vector<Var> zs{Var::z(1), Var::z(2)};
    EXPECT_EQ(gen_fT(f, zs, {}), P("z1*z2", f));
    EXPECT_EQ(gen_fT(f, zs, {1, 2}), P("[z1,z2]", f));
    EXPECT_EQ(gen_rT(f, Var::y(1), zs, {1}), P("z2*[y1,z1]", f));
    EXPECT_THROW(gen_fT(f, zs, {1}), Error);
    EXPECT_THROW(gen_rT(f, Var::y(1), zs, {2, 1}), Error);
}

TEST(Generators, Gm) {
    auto f5 = make_field(5);
    EXPECT_EQ(gen_gm(f5, 1), P("z1", f5));
    // (-2)^{-1} = 2 in GF(5)
    EXPECT_EQ(gen_gm(f5, 2), P("z1*z2 + 2*[z1,z2]", f5));
    auto f3 = make_field(3);
    EXPECT_EQ(gen_gm(f3, 2), P("z1*z2 + [z1,z2]", f3));
    long binom_sum[] = {0, 1, 2, 4, 8, 16, 32};
    for (int m = 1; m <= 6; ++m) EXPECT_EQ(gm_term_count(m), binom_sum[m]);
    EXPECT_THROW(gen_gm(f3, 0), Error);
}

TEST(Generators, IdealBases) {
    auto f = make_field(3);
    auto i1 = gen_ideal_basis(IdealSpec::i1(f));
    ASSERT_EQ(i1.size(), 4u);
    EXPECT_EQ(i1[0].poly, P("[y1,y2]", f));
    EXPECT_EQ(i1[1].poly, P("[y1,z2]", f));
    EXPECT_EQ(i1[2].poly, P("z1*z2 + z2*z1", f));
    EXPECT_EQ(i1[3].poly, P("y1^9 - y1^3", f));

    bool found = false;
    for (const auto& g : gen_ideal_basis(IdealSpec::i3(f, 1))) found |= g.poly == P("z1*z2", f);
    EXPECT_TRUE(found);

    found = false;
    for (const auto& g : gen_ideal_basis(IdealSpec::i4(f, 2)))
        found |= g.poly == gen_gm(f, 2) * P("[y1,y2]", f);
    EXPECT_TRUE(found);
}

TEST(StraightenPsi, SignsAndRepeats) {
    auto r = straighten_psi({{Var::y(2), Var::y(1)}});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, -1);
    EXPECT_EQ(r->second, (std::vector<Var>{Var::y(1), Var::y(2)}));
    EXPECT_FALSE(straighten_psi({{Var::y(1), Var::y(2)}, {Var::y(1), Var::y(3)}}));
    auto x = straighten_psi({{Var::y(1), Var::y(3)}, {Var::y(2), Var::y(4)}});
    ASSERT_TRUE(x);
    EXPECT_EQ(x->first, -1);
}

// [x1,x3][x2,x4] = -[x1,x2][x3,x4] holds in G, so the exchange carries a minus sign.
TEST(StraightenPsi, ExchangeSignAgainstEvaluation) {
    auto f = make_field(5);
    Rng rng(3);
    HomogeneousSpan all_even(f, GradingSpec::canonical(), 0, 8, 4), all_odd(f, GradingSpec::canonical(), 1, 8, 3);
    auto lhs = P("[y1,y3]*[y2,y4]", f), rhs = P("[y1,y2]*[y3,y4]", f);
    for (int i = 0; i < 50; ++i) {
        std::map<Var, GElem> vals;
        for (int j = 1; j <= 4; ++j) vals.emplace(Var::y(j), all_even.random(rng) + all_odd.random(rng));
        const GElem a = evaluate_unchecked(lhs, vals, f, 8), b = evaluate_unchecked(rhs, vals, f, 8);
        EXPECT_EQ(a, -b);
    }
}

TEST(StraightenPsi, PathIndependence) {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Var> pool{Var::y(1), Var::y(2), Var::y(3), Var::z(1), Var::z(2), Var::z(3)};
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::pair<Var, Var>> br{{pool[0], pool[1]}, {pool[2], pool[3]}, {pool[4], pool[5]}};
        const auto base = straighten_psi(br);
        ASSERT_TRUE(base);
        int sign = 1;
        for (int step = 0; step < 12; ++step) {
            const int i = uniform(rng, 0, 2), j = (i + uniform(rng, 1, 2)) % 3;
            switch (uniform(rng, 0, 2)) {
                case 0:
                    std::swap(br[i].first, br[i].second);
                    sign = -sign;
                    break;
                case 1:
                    std::swap(br[i], br[j]);
                    break;
                default:
                    std::swap(br[i].second, br[j].first);
                    sign = -sign;
                    break;
            }
        }
        const auto moved = straighten_psi(br);
        ASSERT_TRUE(moved);
        EXPECT_EQ(moved->second, base->second);
        EXPECT_EQ(moved->first * sign, base->first);
    }
}

TEST(Reduce, Examples) {
    auto f = make_field(3);
    auto i2 = IdealSpec::i2(f);
    EXPECT_EQ(to_string(reduce(P("z1*y1", f), i2)), "y1*z1 - [y1,z1]");
    EXPECT_EQ(to_string(reduce(P("y1^4", f), i2)), "(y1^3) * y1");
    EXPECT_EQ(to_string(reduce(P("z1^3", f), i2)), "0");
    EXPECT_EQ(to_string(reduce(P("y1^9", f), i2)), "(y1^3) * 1");
    EXPECT_EQ(to_string(reduce(P("y1^27", f), i2)), "(y1^3) * 1");
    EXPECT_EQ(to_string(reduce(P("[y1,[y2,y3]]", f), i2)), "0");
    EXPECT_EQ(to_string(reduce(P("z1*z2", f), IdealSpec::i3(f, 1))), "0");
    EXPECT_EQ(to_string(reduce(P("y1*z1 - z1*y1", f), IdealSpec::i1(f))), "0");
    EXPECT_EQ(to_string(reduce(P("z2*z1", f), IdealSpec::i1(f))), "-z1*z2");
}

TEST(Reduce, Trace) {
    auto f = make_field(3);
    auto i2 = IdealSpec::i2(f);
    auto t = reduction_trace(P("z1*y1", f), i2);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].rule, "SWAP");
    EXPECT_EQ(to_string(*f, t[0]), "SWAP: z1*y1 -> y1*z1 - [y1,z1]");
    EXPECT_TRUE(reduction_trace(P("y1", f), i2).empty());
    auto k = reduction_trace(P("z1^3", f), i2);
    ASSERT_FALSE(k.empty());
    EXPECT_EQ(k.back().rule, "KILL-ZP");
}

TEST(Reduce, ReplayAndIdempotence) {
    auto f = make_field(3);
    Rng rng(17);
    for (const auto& spec : all_specs(f)) {
        for (int i = 0; i < 25; ++i) {
            const FreePoly p = random_poly(f, rng, {2, 2, 4, 5});
            const CanonicalForm cf = reduce(p, spec);
            EXPECT_EQ(replay_trace(p, reduction_trace(p, spec), spec), cf) << spec.name() << " " << to_string(p);
            EXPECT_EQ(reduce(expand(cf), spec), cf) << spec.name() << " " << to_string(p);
            EXPECT_EQ(reduce(parse_poly(to_string(cf), f), spec), cf) << to_string(cf);
        }
    }
}

TEST(Reduce, GeneratorsVanish) {
    for (int p : {3, 5}) {
        auto f = make_field(p);
        Rng rng(23);
        for (const auto& spec : all_specs(f))
            for (const auto& g : gen_ideal_basis(spec)) {
                EXPECT_TRUE(reduce(g.poly, spec).pairs.empty()) << spec.name() << " " << g.name;
                if (g.poly.max_degree() > 9) continue;
                for (int i = 0; i < 3; ++i) {
                    const FreePoly inst = random_instance(g.poly, rng);
                    if (inst.max_degree() > 10) continue;
                    EXPECT_TRUE(reduce(inst, spec).pairs.empty()) << spec.name() << " " << g.name;
                }
            }
    }
}

TEST(Reduce, Soundness) {
    auto f = make_field(3);
    Rng rng(29);
    for (const auto& spec : all_specs(f)) {
        for (int i = 0; i < 25; ++i) {
            const FreePoly p = random_poly(f, rng, {2, 2, 5, 6});
            const FreePoly r = expand(reduce(p, spec));
            std::set<Var> vars = p.variables();
            for (const auto& v : r.variables()) vars.insert(v);
            for (int j = 0; j < 10; ++j) {
                const GAssignment a = random_assignment(f, vars, spec.grading(), 8, 6, rng);
                EXPECT_TRUE(same_value(p, r, a)) << spec.name() << " " << to_string(p);
            }
        }
    }
}

TEST(Reduce, OutputClass) {
    auto f = make_field(3);
    Rng rng(31);
    for (const auto& spec : {IdealSpec::i1(f), IdealSpec::i2(f), IdealSpec::i3(f, 1), IdealSpec::i3(f, 2),
                             IdealSpec::i4(f, 1)})
        for (int i = 0; i < 40; ++i) {
            const FreePoly p = random_poly(f, rng, {2, 2, 5, 6});
            for (const auto& [c, u] : reduce(p, spec).pairs)
                EXPECT_TRUE(in_canonical_class(u, spec)) << spec.name() << " " << term_text(u);
        }
}

// Over GF(3) with k = 2 this boundary term is not an identity of G_2 and has no
// SS3 replacement; reduce keeps it.
TEST(Reduce, BoundaryTermOutsideSS3IsKept) {
    auto f = make_field(3);
    const auto spec = IdealSpec::i4(f, 2);
    const PrTerm u = T("z1^2*z2*[z1,z3]");
    EXPECT_FALSE(ss_class(u, spec).ss3);
    const CanonicalForm cf = reduce(expand(u, f), spec);
    ASSERT_EQ(cf.pairs.size(), 1u);
    EXPECT_EQ(cf.pairs[0].second, u);
    Rng rng(37);
    bool nonzero = false;
    for (int i = 0; i < 20 && !nonzero; ++i) {
        const GAssignment a = random_assignment(f, term_stats(u).vars, spec.grading(), 8, 6, rng);
        nonzero = !evaluate(expand(u, f), a).is_zero();
    }
    EXPECT_TRUE(nonzero);
}

TEST(Reduce, IdealParsing) {
    auto f = make_field(3);
    EXPECT_EQ(parse_ideal("I3:2", f).name(), "I3(k=2)");
    EXPECT_EQ(parse_ideal("I4:1", f).grading(), GradingSpec::first_k(1));
    EXPECT_THROW(parse_ideal("I4:0", f), Error);
    EXPECT_THROW(parse_ideal("I5", f), Error);
}
