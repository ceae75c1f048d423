#include <gtest/gtest.h>

#include "grassid/canon.hpp"
#include "grassid/checker.hpp"
#include "grassid/sample.hpp"
#include "grassid/text.hpp"

using namespace grassid;

namespace {

using Verdict = CheckReport::Verdict;

PrTerm T(const std::string& s) {
    auto [sign, u] = parse_term(s);
    EXPECT_EQ(sign, 1) << s;
    return u;
}

CheckConfig exhaustive(GradingSpec g, int n, int max_wt = -1) {
    CheckConfig c;
    c.grading = g;
    c.n = n;
    c.mode = CheckConfig::Mode::Exhaustive;
    c.max_wt = max_wt;
    return c;
}

CheckConfig randomized(GradingSpec g, int n, int trials = 100, unsigned long long seed = 1) {
    CheckConfig c;
    c.grading = g;
    c.n = n;
    c.trials = trials;
    c.seed = seed;
    return c;
}

GElem E(const std::string& s, const FieldPtr& f, int n) { return parse_element(s, f, n); }

}  // namespace

TEST(Check, Examples) {
    auto f = make_field(3);
    auto anti = parse_poly("z1*z2 + z2*z1", f);
    EXPECT_EQ(check_identity(anti, exhaustive(GradingSpec::canonical(), 3)).verdict, Verdict::Holds);

    auto zz = parse_poly("z1*z2", f);
    EXPECT_EQ(check_identity(zz, randomized(GradingSpec::first_k_star(1), 6)).verdict, Verdict::Holds);

    auto r = check_identity(zz, exhaustive(GradingSpec::canonical(), 2));
    ASSERT_EQ(r.verdict, Verdict::Fails);
    ASSERT_TRUE(r.assignment);
    EXPECT_EQ(r.assignment->values.at(Var::z(1)), E("e1", f, 2));
    EXPECT_EQ(r.assignment->values.at(Var::z(2)), E("e2", f, 2));
    EXPECT_EQ(*r.value, E("e1*e2", f, 2));
}

TEST(Check, ExhaustiveHoldsIsCountedOverWholeSpan) {
    auto f = make_field(3);
    auto r = check_identity(parse_poly("[y1,y2]", f), exhaustive(GradingSpec::canonical(), 3));
    EXPECT_EQ(r.verdict, Verdict::Holds);
    HomogeneousSpan even(f, GradingSpec::canonical(), 0, 3, 3);
    const auto m = *even.count(1000);
    EXPECT_EQ(r.evaluations, m * m);
}

TEST(Check, ConstantPolynomials) {
    auto f = make_field(5);
    EXPECT_EQ(check_identity(FreePoly(f), randomized(GradingSpec::canonical(), 4)).verdict, Verdict::Holds);
    auto r = check_identity(FreePoly::one(f), randomized(GradingSpec::canonical(), 4));
    EXPECT_EQ(r.verdict, Verdict::Fails);
    EXPECT_EQ(*r.value, GElem::one(f, 4));
}

TEST(Check, BudgetGivesInconclusive) {
    auto f = make_field(3);
    auto cfg = exhaustive(GradingSpec::canonical(), 6);
    cfg.budget = 100;
    auto r = check_identity(parse_poly("[y1,y2] + [y2,y3]", f), cfg);
    EXPECT_EQ(r.verdict, Verdict::Inconclusive);
    EXPECT_FALSE(r.note.empty());

    auto rc = randomized(GradingSpec::canonical(), 6, 50);
    rc.budget = 10;
    EXPECT_EQ(check_identity(parse_poly("[y1,y2]", f), rc).verdict, Verdict::Inconclusive);
}

TEST(Check, FailuresReplay) {
    auto f = make_field(3);
    for (const char* s : {"[y1,z1]", "z1*z2", "y1*y2 - y2*y1 + z1*z1", "[z1,z2,z3]*z1"}) {
        auto p = parse_poly(s, f);
        for (auto g : {GradingSpec::canonical(), GradingSpec::alternating(), GradingSpec::first_k(1)}) {
            auto cfg = randomized(g, 6, 200, 7);
            auto r = check_identity(p, cfg);
            if (r.verdict != Verdict::Fails) continue;
            ASSERT_TRUE(r.assignment && r.value);
            check_assignment(*r.assignment);
            EXPECT_EQ(evaluate(p, *r.assignment), *r.value) << s;
            EXPECT_FALSE(r.value->is_zero());
            const int trial = static_cast<int>(r.evaluations) - 1;
            auto again = random_trial_assignment(p, cfg, trial);
            EXPECT_EQ(again.values, r.assignment->values) << s;
        }
    }
}

TEST(Check, JobsDoNotChangeReports) {
    auto f = make_field(5);
    for (const char* s : {"[y1,y2]*[y1,y2]", "z1*z2*z3", "[y1,z1]*y2"}) {
        auto p = parse_poly(s, f);
        auto one = randomized(GradingSpec::alternating(), 8, 64, 11);
        auto many = one;
        many.jobs = 4;
        const auto a = check_identity(p, one), b = check_identity(p, many);
        EXPECT_EQ(report_kv(a), report_kv(b)) << s;
    }
}

TEST(Check, SameSeedSameReport) {
    auto f = make_field(3);
    auto p = parse_poly("[y1,z1]*z2", f);
    auto cfg = randomized(GradingSpec::alternating(), 6, 100, 3);
    EXPECT_EQ(report_text(check_identity(p, cfg)), report_text(check_identity(p, cfg)));
}

TEST(Check, ReportFormats) {
    auto f = make_field(3);
    auto r = check_identity(parse_poly("z1*z2", f), exhaustive(GradingSpec::canonical(), 2));
    const auto kv = report_kv(r);
    EXPECT_NE(kv.find("verdict=Fails\n"), std::string::npos) << kv;
    EXPECT_NE(kv.find("witness.z1=e1\n"), std::string::npos) << kv;
    EXPECT_NE(kv.find("witness.z2=e2\n"), std::string::npos) << kv;
    EXPECT_NE(kv.find("value=e1e2\n"), std::string::npos) << kv;
    EXPECT_EQ(report_text(r).rfind("Fails after ", 0), 0u);
}

TEST(Check, GeneratorsHoldOnTheirGrading) {
    for (int p : {3, 5}) {
        auto f = make_field(p);
        for (auto spec : {IdealSpec::i1(f), IdealSpec::i2(f), IdealSpec::i3(f, 1), IdealSpec::i3(f, 2),
                          IdealSpec::i4(f, 1), IdealSpec::i4(f, 2)}) {
            for (const auto& g : gen_ideal_basis(spec)) {
                auto r = check_identity(g.poly, randomized(spec.grading(), 8, 40, 5));
                EXPECT_EQ(r.verdict, Verdict::Holds) << spec.name() << " " << g.name;
            }
        }
    }
}

TEST(Check, Separation) {
    auto f = make_field(3);
    const std::vector<IdealSpec> specs{IdealSpec::i1(f), IdealSpec::i2(f), IdealSpec::i3(f, 1), IdealSpec::i4(f, 1),
                                       IdealSpec::i4(f, 2)};
    auto fails_on = [&](const IdealSpec& a, const GradingSpec& g) {
        for (const auto& gen : gen_ideal_basis(a))
            if (check_identity(gen.poly, randomized(g, 8, 100, 2)).verdict == Verdict::Fails) return true;
        return false;
    };
    for (std::size_t i = 0; i < specs.size(); ++i)
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            const auto &a = specs[i], &b = specs[j];
            EXPECT_TRUE(fails_on(a, b.grading()) || fails_on(b, a.grading())) << a.name() << " vs " << b.name();
        }
    EXPECT_TRUE(fails_on(IdealSpec::i1(f), GradingSpec::alternating()));
    EXPECT_FALSE(fails_on(IdealSpec::i2(f), GradingSpec::canonical()));
}

TEST(ScalarWitness, Examples) {
    auto f = make_field(3);
    auto w = scalar_witness(parse_poly("y1^3", f));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->at(Var::y(1)), 1u);

    auto f9 = make_field(3, 2);
    EXPECT_FALSE(scalar_witness(parse_poly("y1^27 - y1^3", f9)));
    EXPECT_FALSE(scalar_witness(parse_poly("y1^9 - y1^3", f)));

    auto d = scalar_witness(parse_poly("y1^3 - y2^3", f));
    ASSERT_TRUE(d);
    EXPECT_EQ(d->at(Var::y(1)), 1u);
    EXPECT_EQ(d->at(Var::y(2)), 0u);
}

TEST(ScalarWitness, Errors) {
    auto f = make_field(3);
    EXPECT_THROW(scalar_witness(parse_poly("z1^3", f)), Error);
    EXPECT_THROW(scalar_witness(parse_poly("y1*y2*y3*y4*y5", f)), Error);
}

TEST(ScalarWitness, RandomPPolynomials) {
    Rng rng(4);
    for (auto f : {make_field(3), make_field(3, 2)}) {
        for (int i = 0; i < 30; ++i) {
            auto poly = random_ppoly(f, rng, 2);
            auto w = scalar_witness(poly);
            ASSERT_TRUE(w) << to_string(poly);
            EXPECT_NE(evaluate_scalar(poly, *w), 0u);
        }
    }
}

TEST(Witness, CaseNames) {
    for (const char* s : {"can", "inf", "kstar:0", "kstar:2", "k1:1", "k2:3"}) EXPECT_EQ(parse_case(s).name(), s);
    for (const char* s : {"", "k1:0", "kstar", "k3:1", "k1:x"}) EXPECT_THROW(parse_case(s), Error) << s;
}

TEST(Witness, CanonicalExample) {
    auto f = make_field(3);
    const auto u = T("z1*z2");
    auto a = build_witness(u, parse_case("can"), f);
    check_assignment(a);
    const int n = a.values.at(Var::z(1)).truncation();
    EXPECT_EQ(a.values.at(Var::z(1)), E("e1", f, n));
    EXPECT_EQ(a.values.at(Var::z(2)), E("e2", f, n));
    auto d = certify_dominant(u, a, f);
    EXPECT_TRUE(d.nonzero);
    EXPECT_EQ(d.dom_support, Mask{0b11});
}

TEST(Witness, InfiniteExample) {
    auto f = make_field(3);
    const auto u = T("y1");
    auto a = build_witness(u, parse_case("inf"), f);
    check_assignment(a);
    const int n = a.values.at(Var::y(1)).truncation();
    EXPECT_EQ(a.values.at(Var::y(1)), E("e2*e4", f, n));
    EXPECT_TRUE(certify_dominant(u, a, f).nonzero);
}

TEST(Witness, Case1Example) {
    auto f = make_field(3);
    const auto u = T("z1");
    auto a = build_witness(u, parse_case("k1:1"), f);
    check_assignment(a);
    const int n = a.values.at(Var::z(1)).truncation();
    EXPECT_EQ(a.values.at(Var::z(1)), E("e2*e1", f, n));
    auto d = certify_dominant(u, a, f);
    EXPECT_TRUE(d.nonzero);
    EXPECT_EQ(d.dom_support, expected_dom_support(u, parse_case("k1:1")));
}

TEST(Witness, ClassMismatch) {
    auto f = make_field(3);
    EXPECT_THROW(build_witness(T("y1*[y1,y2]"), parse_case("can"), f), Error);
    EXPECT_THROW(build_witness(T("z1*z2"), parse_case("kstar:1"), f), Error);
}

TEST(Witness, SweepAllCases) {
    Rng rng(9);
    TermShapeLimits lim;
    for (int p : {3, 5}) {
        auto f = make_field(p);
        for (const char* cs : {"can", "inf", "kstar:1", "kstar:2", "k1:1", "k1:2", "k2:1", "k2:2"}) {
            const auto c = parse_case(cs);
            int done = 0;
            for (int tries = 0; done < 20 && tries < 20000; ++tries) {
                const auto u = random_term(rng, lim);
                if (!in_case_class(u, c, p)) continue;
                ++done;
                auto a = build_witness(u, c, f);
                check_assignment(a);
                auto d = certify_dominant(u, a, f);
                EXPECT_TRUE(d.nonzero) << cs << " " << term_text(u);
                EXPECT_EQ(d.dom_support, expected_dom_support(u, c)) << cs << " " << term_text(u);
            }
            EXPECT_EQ(done, 20) << cs;
        }
    }
}

TEST(Dominant, Examples) {
    auto f = make_field(5);
    const int n = 8;
    GAssignment a{GradingSpec::canonical(), {{Var::z(1), E("e1", f, n)}, {Var::z(2), E("e2", f, n)}}};
    auto d = certify_dominant(T("[z1,z2]"), a, f);
    EXPECT_TRUE(d.nonzero);
    EXPECT_EQ(d.dom_support, Mask{0b11});
    EXPECT_EQ(d.value, E("2*e1*e2", f, n));

    GAssignment zero{GradingSpec::canonical(), {{Var::y(1), GElem::zero(f, n)}}};
    EXPECT_FALSE(certify_dominant(T("y1"), zero, f).nonzero);

    for (int k = 1; k <= 4; ++k) {
        GElem y = GElem::zero(f, n);
        for (int i = 1; i <= k; ++i) y = y + GElem::gen(f, n, 2 * i - 1) * GElem::gen(f, n, 2 * i);
        GAssignment pw{GradingSpec::canonical(), {{Var::y(1), y}}};
        auto r = certify_dominant(T("y1^" + std::to_string(k)), pw, f);
        EXPECT_EQ(r.nonzero, k < 5) << k;
        EXPECT_EQ(r.dom_support, detail::full_mask(2 * k)) << k;
    }
    GAssignment partial{GradingSpec::canonical(), {{Var::y(1), GElem::one(f, n)}}};
    EXPECT_THROW(certify_dominant(T("y1*y2"), partial, f), Error);
}

// Offsets recomputed from a hand count of the term's letters.
TEST(Witness, OffsetsFromDisplayedFormulas) {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const auto u = random_term(rng, TermShapeLimits{});
        int ybeg_only = 0, y_total = 0, a_sum = 0, z_beg = 0, z_both = 0, z_total = 0, b_sum = 0;
        for (const auto& v : term_stats(u).vars) {
            const int e = u.exponent(v);
            const bool in_psi = u.in_psi(v);
            if (v.odd()) {
                ++z_total;
                b_sum += e;
                if (e > 0) (in_psi ? z_both : z_beg) += 1;
            } else {
                ++y_total;
                a_sum += e;
                if (e > 0 && !in_psi) ++ybeg_only;
            }
        }
        const auto sh = term_shape(u);
        for (int k = 1; k <= 3; ++k) {
            const auto inf = witness_offsets(sh, parse_case("inf"));
            EXPECT_EQ(inf.M, 4 * a_sum + 2 * (y_total - ybeg_only));
            const auto ks = witness_offsets(sh, TheoremCase{TheoremCase::Kind::KStar, k});
            EXPECT_EQ(ks.Q, k + 2 * a_sum + (y_total - ybeg_only));
            EXPECT_EQ(ks.T, b_sum + z_both);
            const auto c1 = witness_offsets(sh, TheoremCase{TheoremCase::Kind::KCase1, k});
            EXPECT_EQ(c1.R, k + 2 * a_sum);
            EXPECT_EQ(c1.S, k + 2 * a_sum + b_sum + z_both);
            const auto c2 = witness_offsets(sh, TheoremCase{TheoremCase::Kind::KCase2, k});
            EXPECT_EQ(c2.M, k + b_sum + z_total - z_beg);
        }
    }
}
