#include "lommel/identities.hpp"
#include "lommel/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace lommel;

namespace {

constexpr double pi = std::numbers::pi;

IdentityCase make(IdentityId id, CaseParams p) { return {id, p, 0.0}; }

const FormResult* form(const ReportRecord& r, const std::string& name)
{
    for (const auto& f : r.forms)
        if (f.name == name)
            return &f;
    return nullptr;
}

std::string csv_of(const std::vector<ReportRecord>& rs)
{
    std::ostringstream os;
    write_csv(os, rs);
    return os.str();
}

} // namespace

TEST(IdentityIds, ParseAndPrint)
{
    EXPECT_EQ(parse_identity("T1ap"), IdentityId::T1a_p);
    EXPECT_EQ(parse_identity("T1c'"), IdentityId::T1c_p);
    EXPECT_EQ(parse_identity("E17"), IdentityId::E17);
    EXPECT_FALSE(parse_identity("E18").has_value());
    for (IdentityId id : all_identities)
        EXPECT_EQ(parse_identity(to_string(id)), id);
}

TEST(Theorem1, BPrimeAtOne)
{
    const auto r = evaluate(make(IdentityId::T1b_p, {.a = 1.0}));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.rhs, pi * pi / 8.0 * (1.0 - bessel_j0(2.0).value), 1e-15);
    EXPECT_LE(r.abs_residual, 1e-4);
    EXPECT_FALSE(r.identity_case.params.b.has_value());
}

TEST(Theorem1, CPrimeSmallArgumentLimit)
{
    // s_{-1,x}(0) = -1/x^2, so the left side tends to int sin^2(pi x/2)/x^2 = pi^2/4.
    const auto r = evaluate(make(IdentityId::T1c_p, {.a = 1e-3}));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.lhs, pi * pi / 4.0, 1e-4);
    EXPECT_NEAR(r.rhs, pi * pi / 4.0, 1e-5);
}

TEST(Theorem1, SignOfTheStruveDifference)
{
    const auto r = evaluate(make(IdentityId::T1a, {.a = 1.0, .b = 0.5}));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_EQ(r.form, "theorem1");
    ASSERT_EQ(r.forms.size(), 2u);
    EXPECT_TRUE(form(r, "theorem1")->matches);
    EXPECT_FALSE(form(r, "eq5")->matches);
    EXPECT_GT(form(r, "eq5")->abs_residual, 0.1);
}

TEST(Theorem1, PrimedVariantsAreTheDiagonal)
{
    for (auto [plain, primed] : {std::pair{IdentityId::T1a, IdentityId::T1a_p}, {IdentityId::T1b, IdentityId::T1b_p},
             {IdentityId::T1c, IdentityId::T1c_p}}) {
        const auto d = evaluate(make(plain, {.a = 2.0, .b = 2.0}));
        const auto p = evaluate(make(primed, {.a = 2.0}));
        EXPECT_NEAR(d.lhs, p.lhs, 1e-12);
        EXPECT_NEAR(d.rhs, p.rhs, 1e-12);
    }
}

TEST(Theorem1, OutsideExploredRange)
{
    const auto r = evaluate(make(IdentityId::T1b, {.a = 6.0, .b = 1.0}));
    EXPECT_EQ(r.verdict, Verdict::unresolved);
    EXPECT_NE(r.note.find("outside"), std::string::npos);
}

TEST(Theorem1, PinnedConventionIsObeyed)
{
    ConventionsRecord rec{{"T1a", {"eq5", 0.0}}};
    Settings s;
    s.conventions = &rec;
    const auto r = evaluate(make(IdentityId::T1a, {.a = 1.0, .b = 0.5}), s);
    EXPECT_EQ(r.form, "eq5");
    EXPECT_EQ(r.verdict, Verdict::fail);
}

TEST(Theorem2, RepresentationExamples)
{
    for (auto [n, t] : {std::pair{0, 1.0}, {2, 5.0}}) {
        const auto r = evaluate(make(IdentityId::T2_9a, {.t = t, .n = n}));
        EXPECT_EQ(r.verdict, Verdict::pass);
        EXPECT_LE(r.abs_residual, 1e-9);
    }
    const auto r = evaluate(make(IdentityId::T2_9a, {.t = 1.0, .n = 0}));
    EXPECT_NEAR(r.lhs, pi / 2.0 * struve_h0(1.0).value, 1e-12);

    const auto odd = evaluate(make(IdentityId::T2_9b, {.t = 0.0, .n = 1}));
    EXPECT_DOUBLE_EQ(odd.lhs, -1.0 / 9.0);
    EXPECT_LE(odd.abs_residual, 1e-10);
}

TEST(Theorem2, TransformInsideAndOutsideSupport)
{
    const auto r = evaluate(make(IdentityId::T2_8a, {.x = 0.5, .n = 0}));
    EXPECT_DOUBLE_EQ(r.lhs, 1.0 / std::sqrt(0.75));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_LE(r.abs_residual, 1e-3);

    const auto r2 = evaluate(make(IdentityId::T2_8a, {.x = 0.3, .n = 1}));
    EXPECT_LE(r2.abs_residual, 1e-3);

    const auto out = evaluate(make(IdentityId::T2_8b, {.x = 1.2, .n = 1}));
    EXPECT_EQ(out.lhs, 0.0);
    EXPECT_LE(std::abs(out.rhs), 1e-3);

    const auto edge = evaluate(make(IdentityId::T2_8a, {.x = 0.97, .n = 0}));
    EXPECT_EQ(edge.verdict, Verdict::unresolved);
}

TEST(Recurrences, PoleIsUnresolved)
{
    const auto r = evaluate(make(IdentityId::E10a, {.a = 1.0, .x = 1.0}));
    EXPECT_EQ(r.verdict, Verdict::unresolved);
    EXPECT_NE(r.note.find("PoleAtOrder"), std::string::npos);
}

TEST(Recurrences, SecondRelationIsOffByOneOverXSquared)
{
    const auto r = evaluate(make(IdentityId::E10b, {.a = 1.0, .x = 2.5}));
    EXPECT_EQ(r.form, "corrected");
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_FALSE(form(r, "printed")->matches);
    EXPECT_NEAR(form(r, "printed")->abs_residual, 1.0 / 6.25, 1e-12);
}

TEST(Recurrences, CorrectedOrderLowering)
{
    for (auto [m, x, a] : {std::tuple{0.0, 2.5, 1.0}, {1.0, 0.5, 2.0}}) {
        const auto r = evaluate(make(IdentityId::E11, {.a = a, .x = x, .m = m}));
        EXPECT_EQ(r.verdict, Verdict::pass);
        EXPECT_LE(r.abs_residual, 1e-10);
    }
}

TEST(Recurrences, DerivativeForms)
{
    const auto e12 = evaluate(make(IdentityId::E12, {.a = 1.5, .x = 4.0, .m = 0.0}));
    const auto e15 = evaluate(make(IdentityId::E15a, {.a = 1.5, .x = 4.0, .m = 0.0}));
    EXPECT_EQ(e12.verdict, Verdict::pass);
    EXPECT_EQ(e15.verdict, Verdict::pass);
    EXPECT_NEAR(e12.rhs, e15.rhs, 1e-14);

    // Away from mu = 0 the order form of the derivative is wrong.
    const auto off = evaluate(make(IdentityId::E15a, {.a = 1.5, .x = 2.5, .m = 1.0}));
    EXPECT_EQ(off.verdict, Verdict::fail);
    const auto e12_off = evaluate(make(IdentityId::E12, {.a = 1.5, .x = 2.5, .m = 1.0}));
    EXPECT_EQ(e12_off.verdict, Verdict::pass);
}

TEST(Chebyshev, Eq13And15b)
{
    const auto r0 = evaluate(make(IdentityId::E13, {.x = 0.6, .n = 0}));
    EXPECT_DOUBLE_EQ(r0.lhs, 1.0);
    EXPECT_NEAR(r0.rhs, 1.0, 1e-15);
    EXPECT_EQ(evaluate(make(IdentityId::E13, {.x = 0.35, .n = 2})).verdict, Verdict::pass);
    EXPECT_EQ(evaluate(make(IdentityId::E15b, {.x = 0.4, .n = 3})).verdict, Verdict::pass);
    EXPECT_EQ(evaluate(make(IdentityId::E15b, {.x = 0.4, .n = 0})).verdict, Verdict::unresolved);
}

TEST(Chebyshev, Eq14Normalization)
{
    const auto r = evaluate(make(IdentityId::E14, {.x = 0.5, .n = 0}));
    EXPECT_EQ(r.form, "composed");
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_FALSE(form(r, "printed")->matches);
    EXPECT_FALSE(form(r, "two_over_pi")->matches);
}

TEST(SumRules, Eq16Examples)
{
    const auto r0 = evaluate(make(IdentityId::E16, {.x = 2.0, .n = 0}));
    EXPECT_LE(r0.abs_residual, 1e-8);
    EXPECT_NEAR(r0.rhs, pi / 2.0 * struve_h0(2.0).value, 1e-10);
    EXPECT_LE(evaluate(make(IdentityId::E16, {.x = 1.5, .n = 3})).abs_residual, 1e-8);
    EXPECT_LE(evaluate(make(IdentityId::E16, {.x = 5.0, .n = 5})).abs_residual, 1e-7);
}

TEST(SumRules, Eq16Telescopes)
{
    // U_{2n} - U_{2n-2} = 2 T_{2n}: consecutive sum rules differ by T2_9a.
    for (int n = 1; n <= 5; ++n)
        for (double x : {0.5, 1.0, 2.0, 5.0}) {
            const auto hi = evaluate(make(IdentityId::E16, {.x = x, .n = n}));
            const auto lo = evaluate(make(IdentityId::E16, {.x = x, .n = n - 1}));
            const double lhs_step = hi.lhs - lo.lhs;
            const double rhs_step = hi.rhs - lo.rhs;
            EXPECT_NEAR(lhs_step, (n % 2 ? -1.0 : 1.0) * lommel_s({0.0, 2.0 * n, x}).value, 1e-13);
            EXPECT_NEAR(lhs_step, rhs_step, 1e-8) << "n=" << n << " x=" << x;
        }
}

TEST(SumRules, Eq17ConstantAndLimit)
{
    const auto r = evaluate(make(IdentityId::E17, {.t = 2.0, .w = 1.0, .K = 40}));
    EXPECT_EQ(r.form, "halved");
    EXPECT_EQ(r.verdict, Verdict::pass);
    const auto r60 = evaluate(make(IdentityId::E17, {.t = 2.0, .w = 1.0, .K = 60}));
    EXPECT_EQ(r60.form, "halved");
    EXPECT_EQ(evaluate(make(IdentityId::E17, {.t = 1.0, .w = 2.0, .K = 40})).form, "halved");

    // w -> 0: left side s_{0,0}(t) = (pi/2) H0(t); the printed constant gives pi H0(t).
    const auto lim = evaluate(make(IdentityId::E17, {.t = 2.0, .w = 1e-9, .K = 40}));
    EXPECT_NEAR(lim.lhs, pi / 2.0 * struve_h0(2.0).value, 1e-12);
    EXPECT_NEAR(form(lim, "printed")->rhs, pi * struve_h0(2.0).value, 1e-8);
    EXPECT_EQ(lim.form, "halved");
}

TEST(Evaluate, MissingParametersAreUnresolved)
{
    const auto r = evaluate(make(IdentityId::E16, {.x = 1.0}));
    EXPECT_EQ(r.verdict, Verdict::unresolved);
    EXPECT_NE(r.note.find("missing parameter n"), std::string::npos);
}

TEST(Evaluate, VerdictFollowsThreshold)
{
    // Tight user tolerance: the verdict then rests on the error estimates.
    IdentityCase c = make(IdentityId::T1b_p, {.a = 1.0});
    c.tolerance = 1e-14;
    const auto r = evaluate(c);
    const bool pass = r.abs_residual <= std::max(1e-14, 3.0 * (r.lhs_error_estimate + r.rhs_error_estimate));
    EXPECT_EQ(r.verdict == Verdict::pass, pass);
}

TEST(RunGrid, EmptyGrid)
{
    EXPECT_TRUE(run_grid({}).empty());
}

TEST(RunGrid, TheoremOneSuiteShape)
{
    const auto cases = build_suite("theorem1", GridSpec{});
    EXPECT_EQ(cases.size(), 3u * 9u + 3u * 3u);
    EXPECT_EQ(cases.front().id, IdentityId::T1a);
    EXPECT_EQ(cases.back().id, IdentityId::T1c_p);
}

TEST(RunGrid, DeterministicAcrossRunsAndThreadCounts)
{
    auto cases = build_suite("sums", GridSpec{});
    const auto t1 = build_cases(IdentityId::T1c, GridSpec{});
    cases.insert(cases.end(), t1.begin(), t1.end());
    Settings one;
    one.threads = 1;
    Settings four;
    four.threads = 4;
    const std::string a = csv_of(run_grid(cases, one));
    const std::string b = csv_of(run_grid(cases, four));
    const std::string c = csv_of(run_grid(cases, four));
    EXPECT_EQ(a, b);
    EXPECT_EQ(b, c);
}

TEST(RunGrid, VerdictsReproducible)
{
    const auto cases = build_suite("recurrences", GridSpec{});
    const auto r1 = run_grid(cases);
    const auto r2 = run_grid(cases);
    ASSERT_EQ(r1.size(), r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i)
        EXPECT_EQ(r1[i].verdict, r2[i].verdict);
}
