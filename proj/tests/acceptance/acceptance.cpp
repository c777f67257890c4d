// Acceptance run: one PASS/FAIL line per criterion. Exits 1 if any criterion
// fails, unless it was named with --expect-fail <k>; a named criterion that
// passes is also an error, so the known-red set stays exact.

#include "lommel/cli.hpp"
#include "lommel/lommel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace lommel;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;
    std::vector<std::string> info;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// 1. Series against the Chebyshev-integral route for integer orders.
Outcome route_agreement()
{
    Outcome o;
    double worst = 0.0;
    for (unsigned n = 0; n <= 8; ++n)
        for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double even = lommel_s({0.0, 2.0 * n, t}).value;
            const double odd = lommel_s({-1.0, 2.0 * n + 1.0, t}).value;
            const double ce = lommel_s_via_chebyshev(parity::even, {n}, t).value;
            const double co = lommel_s_via_chebyshev(parity::odd, {n}, t).value;
            worst = std::max(worst, std::abs(even - ce) / std::max(1.0, std::abs(even)));
            worst = std::max(worst, std::abs(odd - co) / std::max(1.0, std::abs(odd)));
        }
    o.ok = worst <= 1e-9;
    o.detail = "max relative deviation " + sci(worst) + " (limit 1e-9, 90 pairs)";
    return o;
}

// 2. Theorem 1 closed forms.
Outcome theorem1()
{
    Outcome o;
    const std::vector<double> grid{0.5, 1.0, 2.0};
    double worst_bc = 0.0;
    double worst_ap = 0.0;
    bool all_pass = true;
    std::vector<IdentityCase> cases;
    for (IdentityId id : {IdentityId::T1b, IdentityId::T1c})
        for (double a : grid)
            for (double b : grid)
                cases.push_back({id, {.a = a, .b = b}, 0.0});
    for (IdentityId id : {IdentityId::T1b_p, IdentityId::T1c_p, IdentityId::T1a_p})
        for (double a : grid)
            cases.push_back({id, {.a = a}, 0.0});
    for (const ReportRecord& r : run_grid(cases)) {
        const bool within = r.abs_residual <= 1e-4;
        all_pass = all_pass && within;
        (r.identity_case.id == IdentityId::T1a_p ? worst_ap : worst_bc)
            = std::max(r.identity_case.id == IdentityId::T1a_p ? worst_ap : worst_bc, r.abs_residual);
    }

    std::vector<IdentityCase> t1a;
    for (double a : grid)
        for (double b : grid)
            t1a.push_back({IdentityId::T1a, {.a = a, .b = b}, 0.0});
    // On the diagonal H0(0) = 0 and both signs give the same value, so only
    // cases where the candidates differ decide between them.
    std::vector<std::size_t> uniform(2, 0);
    std::size_t full = 0;
    for (const ReportRecord& r : run_grid(t1a)) {
        if (r.forms.size() != 2 || std::abs(r.forms[0].rhs - r.forms[1].rhs) <= 2.0 * tolerance_of(r.identity_case))
            continue;
        ++full;
        for (std::size_t i = 0; i < 2; ++i)
            uniform[i] += r.forms[i].matches ? 1 : 0;
    }
    const bool exactly_one = full > 0 && ((uniform[0] == full && uniform[1] == 0) || (uniform[1] == full && uniform[0] == 0));

    o.ok = all_pass && exactly_one;
    o.detail = "(b),(b'),(c),(c') max residual " + sci(worst_bc) + ", (a') max residual " + sci(worst_ap)
        + " (limit 1e-4); (a) theorem-sign matches " + std::to_string(uniform[0]) + "/" + std::to_string(full)
        + ", opposite sign " + std::to_string(uniform[1]) + "/" + std::to_string(full);
    return o;
}

// 3. Convention verdicts under refinement and K, plus the w -> 0 limit of E17.
Outcome conventions()
{
    Outcome o;
    GridSpec base;
    base.K = {40};
    GridSpec more = base;
    more.K = {60};
    GridSpec fine;
    fine.a = {0.5, 0.75, 1.0, 1.5, 2.0};
    fine.b = fine.a;
    fine.y = {0.2, 0.3, 0.45, 0.5, 0.6, 0.7};
    fine.t = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    fine.w = {0.25, 0.5, 1.0, 1.5, 2.0};
    fine.K = {40, 60};

    const auto r40 = resolve_conventions(base);
    const auto r60 = resolve_conventions(more);
    const auto rf = resolve_conventions(fine);
    bool stable = true;
    std::string forms;
    for (const char* key : {"T1a", "E14", "E17"}) {
        const std::string f = r40.record.at(key).chosen_form;
        stable = stable && f != "unresolved" && f == r60.record.at(key).chosen_form
            && f == rf.record.at(key).chosen_form;
        forms += std::string(forms.empty() ? "" : ", ") + key + "=" + f;
    }

    // At w -> 0 the left side of E17 is s_{0,0}(t) = (pi/2) H0(t).
    const std::string e17 = r40.record.at("E17").chosen_form;
    bool limit_ok = true;
    std::size_t limit_cases = 0;
    for (const ReportRecord& r : rf.records) {
        if (r.identity_case.id != IdentityId::E17 || *r.identity_case.params.w != 1e-6)
            continue;
        ++limit_cases;
        const double t = *r.identity_case.params.t;
        const double analytic = pi / 2.0 * struve_h0(t).value;
        const auto it = std::find_if(r.forms.begin(), r.forms.end(), [&](const FormResult& f) { return f.name == e17; });
        limit_ok = limit_ok && it != r.forms.end() && it->matches && std::abs(r.lhs - analytic) <= 1e-5
            && std::abs(it->rhs - analytic) <= 1e-5;
    }
    o.ok = stable && limit_ok && limit_cases > 0;
    o.detail = forms + (stable ? " stable" : " UNSTABLE") + " across refined grid and K 40/60; w->0 limit "
        + (limit_ok ? "consistent" : "inconsistent") + " on " + std::to_string(limit_cases) + " cases";
    return o;
}

// 4. Recurrences on pole-free real orders.
Outcome recurrences()
{
    Outcome o;
    const std::vector<double> ms{0.25, 0.6, 1.45, 2.35};
    const std::vector<double> xs{0.35, 1.8, 2.55, 3.15, 4.4};
    const std::vector<double> as{0.7, 1.9, 3.3, 4.8};
    double w10a = 0.0, w10b = 0.0, w10b_fixed = 0.0, w11 = 0.0, w12 = 0.0, w15 = 0.0;
    std::size_t samples = 0, skipped = 0, k = 0;
    for (double m : ms)
        for (double x : xs) {
            const double a = as[k++ % as.size()];
            try {
                const auto e10a = residual_recurrence({IdentityId::E10a, {.a = a, .x = x}, 0.0});
                const double sm1 = lommel_s({-1.0, x, a}).value;
                const double s1 = lommel_s({1.0, x, a}).value;
                const auto e11 = residual_recurrence({IdentityId::E11, {.a = a, .x = x, .m = m}, 0.0});
                const auto e12 = residual_recurrence({IdentityId::E12, {.a = a, .x = x, .m = m}, 0.0});
                w10a = std::max(w10a, e10a.abs_residual);
                w10b = std::max(w10b, std::abs(sm1 - s1 / (x * x)));
                w10b_fixed = std::max(w10b_fixed, std::abs(sm1 - (s1 - 1.0) / (x * x)));
                w11 = std::max(w11, e11.abs_residual);
                w12 = std::max(w12, e12.abs_residual);
                ++samples;
            } catch (const numeric_error&) {
                ++skipped;
            }
        }
    for (double x : {2.0, 4.0, 6.0, 0.5, 1.5, 2.5})
        for (double a : {0.7, 1.9, 3.3}) {
            const auto r = residual_recurrence({IdentityId::E15a, {.a = a, .x = x, .m = 0.0}, 0.0});
            w15 = std::max(w15, r.abs_residual);
        }
    const bool others = samples >= 20 && w10a <= 1e-10 && w11 <= 1e-10 && w12 <= 1e-10 && w15 <= 1e-6;
    o.ok = others && w10b <= 1e-10;
    o.detail = std::to_string(samples) + " samples: E10a " + sci(w10a) + ", E10b as printed " + sci(w10b) + ", E11 "
        + sci(w11) + ", E12 " + sci(w12) + " (limit 1e-10); E15a vs central difference " + sci(w15) + " (limit 1e-6)";
    if (!(w10b <= 1e-10))
        o.info.push_back("printed E10b s_{-1,x} = s_{1,x}/x^2 misses the inhomogeneous term; s_{-1,x} = (s_{1,x} - 1)/x^2 gives "
            + sci(w10b_fixed));
    if (skipped)
        o.info.push_back(std::to_string(skipped) + " samples skipped at poles");
    return o;
}

// 5. Sum rule E16 and its telescoped single-term form.
Outcome sum_rule()
{
    Outcome o;
    double worst = 0.0;
    double worst_term = 0.0;
    for (int n = 0; n <= 5; ++n)
        for (double x : {0.5, 1.0, 2.0, 5.0}) {
            worst = std::max(worst, residual_eq16({IdentityId::E16, {.x = x, .n = n}, 0.0}).abs_residual);
            if (n == 0)
                continue;
            const unsigned order = 2 * static_cast<unsigned>(n);
            AdaptiveOptions opt;
            opt.initial_panels = 2;
            const double q = integrate_cheb_weight(
                [x, order](double u) { return std::sin(x * u) * (chebyshev_u(order, u) - chebyshev_u(order - 2, u)); },
                1e-13, opt)
                                 .value;
            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            worst_term = std::max(worst_term, std::abs(sign * lommel_s({0.0, 2.0 * n, x}).value - 0.5 * q));
        }
    o.ok = worst <= 1e-8 && worst_term <= 1e-8;
    o.detail = "residual " + sci(worst) + ", telescoped term " + sci(worst_term) + " (limit 1e-8)";
    return o;
}

// 6. Parity and oracle checks of H0 and J0.
Outcome special_functions()
{
    Outcome o;
    bool parity_ok = true;
    for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 7.5, 12.0, 25.0})
        parity_ok = parity_ok && struve_h0(-z).value == -struve_h0(z).value && bessel_j0(-z).value == bessel_j0(z).value;
    double worst = 0.0;
    for (double z : {0.5, 1.0, 2.0, 5.0})
        worst = std::max(worst, std::abs(struve_h0(z).value - oracle::struve_h0(z).value));
    const double dj = std::abs(bessel_j0(2.0).value - oracle::bessel_j0_series(2.0).value);
    o.ok = parity_ok && worst <= 1e-8 && dj <= 1e-10;
    o.detail = std::string("parity ") + (parity_ok ? "exact" : "broken") + "; H0 vs quadrature oracle " + sci(worst)
        + " (limit 1e-8); J0(2) vs series oracle " + sci(dj) + " (limit 1e-10)";
    return o;
}

// 7. Finite-interval oracle at real non-integer order.
Outcome oracle_cross()
{
    Outcome o;
    struct Point {
        oracle::finite_kind kind;
        double y, arg;
    };
    const std::vector<Point> pts{{oracle::finite_kind::sine, 0.5, 1.0}, {oracle::finite_kind::sine, 1.5, 2.0},
        {oracle::finite_kind::sine, 2.5, 0.5}, {oracle::finite_kind::sine, 3.7, 5.0},
        {oracle::finite_kind::sine, 0.3, 3.0}, {oracle::finite_kind::cosine, 0.5, 2.0},
        {oracle::finite_kind::cosine, 1.5, 1.0}, {oracle::finite_kind::cosine, 2.5, 5.0},
        {oracle::finite_kind::cosine, 3.7, 0.5}, {oracle::finite_kind::cosine, 1.2, 3.0}};
    double worst = 0.0;
    for (const Point& p : pts) {
        const double lhs = oracle::lommel_finite(p.kind, p.y, p.arg).value;
        const double rhs = p.kind == oracle::finite_kind::sine
            ? std::cos(pi * p.y / 2.0) * lommel_s({0.0, p.y, p.arg}).value
            : -p.y * std::sin(pi * p.y / 2.0) * lommel_s({-1.0, p.y, p.arg}).value;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    o.ok = worst <= 1e-7;
    o.detail = "max deviation " + sci(worst) + " on 10 (y, arg) points (limit 1e-7)";
    return o;
}

// 8. Quadrature self-tests.
Outcome quadrature()
{
    Outcome o;
    double worst_gauss = 0.0;
    for (int n = min_gauss_order; n <= max_gauss_order; ++n) {
        const GaussRule& rule = gauss_legendre(n);
        for (int d : {2 * n - 2, 2 * n - 1}) {
            // int_0^1 (1 + u^d) du on the rule mapped from [-1, 1].
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double u = 0.5 * (rule.nodes[i] + 1.0);
                sum += rule.weights[i] * (1.0 + std::pow(u, d));
            }
            worst_gauss = std::max(worst_gauss, std::abs(0.5 * sum - (1.0 + 1.0 / (d + 1.0))));
        }
    }
    const bool gauss_ok = worst_gauss <= 1e-13;

    bool cutoff_ok = true;
    double worst_ratio = 0.0;
    Settings s60;
    s60.max_segments = 60;
    Settings s120;
    for (IdentityId id : {IdentityId::T1a, IdentityId::T1b, IdentityId::T1c})
        for (auto [a, b] : {std::pair{1.0, 0.5}, std::pair{2.0, 2.0}, std::pair{0.5, 1.0}}) {
            const auto q60 = detail::index_integral(id, a, b, s60);
            const auto q120 = detail::index_integral(id, a, b, s120);
            const double est = std::max(q60.abs_error_estimate, q120.abs_error_estimate);
            const double diff = std::abs(q60.value - q120.value);
            cutoff_ok = cutoff_ok && diff <= 2.0 * est + 1e-15;
            if (est > 0.0)
                worst_ratio = std::max(worst_ratio, diff / est);
        }

    auto err = [](std::size_t panels) {
        return std::abs(oracle::simpson([](double x) { return std::sin(x); }, 0.0, pi, panels).value - 2.0);
    };
    const double order1 = std::log2(err(16) / err(32));
    const double order2 = std::log2(err(32) / err(64));
    const bool simpson_ok = std::abs(order1 - 4.0) <= 0.1 && std::abs(order2 - 4.0) <= 0.1;

    o.ok = gauss_ok && cutoff_ok && simpson_ok;
    char buf[96];
    std::snprintf(buf, sizeof buf, "Simpson observed order %.3f, %.3f", order1, order2);
    o.detail = "Gauss degree 2n-1 error " + sci(worst_gauss) + "; 60 vs 120 segments max |diff|/estimate "
        + sci(worst_ratio) + " (limit 2); " + buf;
    return o;
}

// 9. Bitwise determinism of the CLI outputs.
struct CliRun {
    int code;
    std::string out;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "lommel_cli");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism()
{
    Outcome o;
    const fs::path root = fs::temp_directory_path() / ("lommel_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const fs::path d1 = root / "run1";
    const fs::path d2 = root / "run2";
    const CliRun v1 = cli({"verify", "all", "--out", d1.string()});
    const CliRun v2 = cli({"verify", "all", "--out", d2.string()});
    bool same = v1.out == v2.out && v1.code == v2.code;
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(d1)) {
        ++files;
        same = same && slurp(e.path()) == slurp(d2 / e.path().filename());
    }
    std::size_t scans = 0;
    for (const char* id : {"T1b", "E16", "E17", "T2_9a"}) {
        same = same && cli({"scan", id}).out == cli({"scan", id}).out;
        ++scans;
    }
    fs::remove_all(root);
    o.ok = same && files >= 2;
    o.detail = std::string(same ? "identical" : "DIFFERENT") + " verify all output and " + std::to_string(files)
        + " report files, " + std::to_string(scans) + " scans";
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--expect-fail" && i + 1 < argc) {
            expected.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: lommel_acceptance [--expect-fail <criterion>]...\n");
            return 2;
        }
    }
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"route agreement", route_agreement},
        {"theorem 1 closed forms", theorem1},
        {"convention adjudication", conventions},
        {"recurrences", recurrences},
        {"sum rule", sum_rule},
        {"special-function sanity", special_functions},
        {"oracle cross-validation", oracle_cross},
        {"quadrature self-tests", quadrature},
        {"determinism", determinism},
    };
    int failed = 0;
    std::set<int> red;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %d %s: %s\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str());
        for (const std::string& line : o.info)
            std::printf("       info: %s\n", line.c_str());
        if (!o.ok) {
            ++failed;
            red.insert(index);
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    if (!expected.empty()) {
        std::printf("expected to fail:");
        for (int k : expected)
            std::printf(" %d", k);
        std::printf(" (%s)\n", red == expected ? "as recorded" : "MISMATCH");
        return red == expected ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
