#pragma once

// Every identity of the index-integral note as a residual LHS - RHS.
//
// A few identities are printed with an inconsistent sign or constant. For
// those, several candidate right-hand sides ("forms") are evaluated and the
// record names the one that matches; a conventions record, when supplied,
// pins the form instead of letting each case pick its own.

#include "lommel/chebyshev_route.hpp"
#include "lommel/error.hpp"
#include "lommel/oscillatory.hpp"
#include "lommel/quadrature.hpp"
#include "lommel/specfun.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace lommel {

enum class IdentityId {
    T1a,
    T1a_p,
    T1b,
    T1b_p,
    T1c,
    T1c_p,
    T2_8a,
    T2_8b,
    T2_9a,
    T2_9b,
    E10a,
    E10b,
    E11,
    E12,
    E13,
    E14,
    E15a,
    E15b,
    E16,
    E17,
};

inline constexpr std::array<IdentityId, 20> all_identities = {IdentityId::T1a, IdentityId::T1a_p, IdentityId::T1b,
    IdentityId::T1b_p, IdentityId::T1c, IdentityId::T1c_p, IdentityId::T2_8a, IdentityId::T2_8b, IdentityId::T2_9a,
    IdentityId::T2_9b, IdentityId::E10a, IdentityId::E10b, IdentityId::E11, IdentityId::E12, IdentityId::E13,
    IdentityId::E14, IdentityId::E15a, IdentityId::E15b, IdentityId::E16, IdentityId::E17};

constexpr std::string_view to_string(IdentityId id) noexcept
{
    switch (id) {
    case IdentityId::T1a: return "T1a";
    case IdentityId::T1a_p: return "T1a'";
    case IdentityId::T1b: return "T1b";
    case IdentityId::T1b_p: return "T1b'";
    case IdentityId::T1c: return "T1c";
    case IdentityId::T1c_p: return "T1c'";
    case IdentityId::T2_8a: return "T2_8a";
    case IdentityId::T2_8b: return "T2_8b";
    case IdentityId::T2_9a: return "T2_9a";
    case IdentityId::T2_9b: return "T2_9b";
    case IdentityId::E10a: return "E10a";
    case IdentityId::E10b: return "E10b";
    case IdentityId::E11: return "E11";
    case IdentityId::E12: return "E12";
    case IdentityId::E13: return "E13";
    case IdentityId::E14: return "E14";
    case IdentityId::E15a: return "E15a";
    case IdentityId::E15b: return "E15b";
    case IdentityId::E16: return "E16";
    case IdentityId::E17: return "E17";
    }
    return "?";
}

/// Accepts the printed names plus "p" for a prime (T1ap) so that shells
/// need no quoting.
inline std::optional<IdentityId> parse_identity(std::string_view s)
{
    std::string name(s);
    if (name.size() == 4 && name.rfind("T1", 0) == 0 && name[3] == 'p')
        name[3] = '\'';
    for (IdentityId id : all_identities)
        if (to_string(id) == name)
            return id;
    return std::nullopt;
}

constexpr std::string_view suite_of(IdentityId id) noexcept
{
    switch (id) {
    case IdentityId::T1a:
    case IdentityId::T1a_p:
    case IdentityId::T1b:
    case IdentityId::T1b_p:
    case IdentityId::T1c:
    case IdentityId::T1c_p: return "theorem1";
    case IdentityId::T2_8a:
    case IdentityId::T2_8b:
    case IdentityId::T2_9a:
    case IdentityId::T2_9b:
    case IdentityId::E13:
    case IdentityId::E14: return "theorem2";
    case IdentityId::E10a:
    case IdentityId::E10b:
    case IdentityId::E11:
    case IdentityId::E12:
    case IdentityId::E15a:
    case IdentityId::E15b: return "recurrences";
    case IdentityId::E16:
    case IdentityId::E17: return "sums";
    }
    return "?";
}

/// Absolute tolerance used when a case does not set its own.
constexpr double default_tolerance(IdentityId id) noexcept
{
    switch (id) {
    case IdentityId::T1a:
    case IdentityId::T1a_p:
    case IdentityId::T1b:
    case IdentityId::T1b_p:
    case IdentityId::T1c:
    case IdentityId::T1c_p: return 1e-4;
    case IdentityId::T2_8a:
    case IdentityId::T2_8b:
    case IdentityId::E14: return 1e-3;
    case IdentityId::T2_9a:
    case IdentityId::T2_9b: return 1e-9;
    case IdentityId::E10a:
    case IdentityId::E10b:
    case IdentityId::E11:
    case IdentityId::E12: return 1e-10;
    case IdentityId::E15a: return 1e-6;
    case IdentityId::E13:
    case IdentityId::E15b: return 1e-12;
    case IdentityId::E16: return 1e-8;
    case IdentityId::E17: return 1e-5;
    }
    return 0.0;
}

/// Free parameters. u of T2_8a/T2_8b travels in x; the order nu of the
/// recurrences travels in x as well (the note writes s_{m,x}).
struct CaseParams {
    std::optional<double> a{}, b{}, t{}, w{}, x{}, m{};
    std::optional<int> n{}, K{};
};

struct IdentityCase {
    IdentityId id = IdentityId::T1a;
    CaseParams params;
    /// 0 selects default_tolerance(id).
    double tolerance = 0.0;
};

inline double tolerance_of(const IdentityCase& c) noexcept
{
    return c.tolerance > 0.0 ? c.tolerance : default_tolerance(c.id);
}

struct ConventionVerdict {
    std::string chosen_form;
    double max_deviation = 0.0;
};

/// identity id (or adjudication key) -> verdict.
using ConventionsRecord = std::map<std::string, ConventionVerdict>;

struct Settings {
    SeriesOptions series;
    double quad_tol_finite = 1e-10;
    double quad_tol_osc = 1e-6;
    std::size_t max_segments = 120;
    const ConventionsRecord* conventions = nullptr;
    bool record_timing = false;
    /// 0 means hardware concurrency.
    unsigned threads = 0;
};

enum class Verdict { pass, fail, unresolved };

constexpr std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unresolved: return "unresolved";
    }
    return "?";
}

struct FormResult {
    std::string name;
    double rhs = 0.0;
    double abs_residual = 0.0;
    bool matches = false;
};

struct ReportRecord {
    IdentityCase identity_case;
    double lhs = std::nan("");
    double rhs = std::nan("");
    double abs_residual = std::nan("");
    double rel_residual = std::nan("");
    double lhs_error_estimate = 0.0;
    double rhs_error_estimate = 0.0;
    /// Milliseconds; only measured when Settings::record_timing is set.
    std::optional<double> wall_ms;
    Verdict verdict = Verdict::unresolved;
    /// Name of the right-hand side used; empty for single-form identities.
    std::string form;
    std::vector<FormResult> forms;
    std::string note;
};

namespace detail {

constexpr double pi = std::numbers::pi;

inline double pass_threshold(double tol, double lhs_err, double rhs_err)
{
    return std::max(tol, 3.0 * (lhs_err + rhs_err));
}

inline double relative(double abs_res, double lhs, double rhs)
{
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? abs_res / scale : 0.0;
}

// Fills residuals and the verdict of a single-form record.
inline void settle(ReportRecord& r, double tol)
{
    r.abs_residual = std::abs(r.lhs - r.rhs);
    r.rel_residual = relative(r.abs_residual, r.lhs, r.rhs);
    r.verdict = r.abs_residual <= pass_threshold(tol, r.lhs_error_estimate, r.rhs_error_estimate) ? Verdict::pass
                                                                                                   : Verdict::fail;
}

// forms[i].rhs must be set; rhs_errs[i] is the error estimate of that form.
inline void settle_forms(ReportRecord& r, std::vector<FormResult> forms, const std::vector<double>& rhs_errs,
    double tol, const Settings& s)
{
    for (std::size_t i = 0; i < forms.size(); ++i) {
        forms[i].abs_residual = std::abs(r.lhs - forms[i].rhs);
        forms[i].matches = forms[i].abs_residual <= pass_threshold(tol, r.lhs_error_estimate, rhs_errs[i]);
    }
    std::optional<std::size_t> chosen;
    bool pinned = false;
    if (s.conventions) {
        const auto it = s.conventions->find(std::string(to_string(r.identity_case.id)));
        if (it != s.conventions->end())
            for (std::size_t i = 0; i < forms.size(); ++i)
                if (forms[i].name == it->second.chosen_form) {
                    chosen = i;
                    pinned = true;
                }
    }
    if (!chosen)
        for (std::size_t i = 0; i < forms.size() && !chosen; ++i)
            if (forms[i].matches)
                chosen = i;
    const std::size_t k = chosen.value_or(0);
    r.rhs = forms[k].rhs;
    r.rhs_error_estimate = rhs_errs[k];
    r.form = forms[k].name;
    r.abs_residual = forms[k].abs_residual;
    r.rel_residual = relative(r.abs_residual, r.lhs, r.rhs);
    if (pinned)
        r.verdict = forms[k].matches ? Verdict::pass : Verdict::fail;
    else if (chosen)
        r.verdict = Verdict::pass;
    else {
        r.verdict = Verdict::unresolved;
        r.note = "no candidate form matches";
    }
    r.forms = std::move(forms);
}

// Moves an integration order off an integer by 10 integer_eps. Segment
// nodes are interior, so this only triggers for explicit requests.
inline double nudge(double x, const SeriesOptions& opt)
{
    return std::abs(x - std::round(x)) <= opt.integer_eps ? x + 10.0 * opt.integer_eps : x;
}

inline double s_val(double mu, double nu, double z, const SeriesOptions& opt)
{
    return lommel_s({mu, nu, z}, opt).value;
}

// Above this argument the alternating series has lost too many digits; the
// Chebyshev-integral route is used instead.
inline constexpr double series_argument_limit = 12.0;

inline double s_integer_order(parity par, unsigned n, double t, const SeriesOptions& opt)
{
    if (t <= series_argument_limit) {
        return par == parity::even ? s_val(0.0, 2.0 * n, t, opt) : s_val(-1.0, 2.0 * n + 1.0, t, opt);
    }
    return lommel_s_via_chebyshev(par, {n}, t, 1e-11).value;
}

inline bool in_certified_range(double v) { return v > 0.0 && v <= 5.0; }

inline double req(const std::optional<double>& v, const char* name)
{
    if (!v)
        throw numeric_error(error_kind::domain_error, std::string("missing parameter ") + name);
    return *v;
}

inline int req(const std::optional<int>& v, const char* name)
{
    if (!v)
        throw numeric_error(error_kind::domain_error, std::string("missing parameter ") + name);
    return *v;
}

inline unsigned req_count(const std::optional<int>& v, const char* name)
{
    const int n = req(v, name);
    if (n < 0)
        throw numeric_error(error_kind::invalid_order, std::string(name) + " must be >= 0");
    return static_cast<unsigned>(n);
}

inline QuadratureResult index_integral(IdentityId id, double a, double b, const Settings& s)
{
    const SeriesOptions opt = s.series;
    OscillatorySpec spec;
    spec.zero_spacing = 1.0;
    switch (id) {
    case IdentityId::T1a:
    case IdentityId::T1a_p:
        spec.integrand = [a, b, opt](double x) {
            x = nudge(x, opt);
            return x * std::sin(pi * x) * s_val(-1.0, x, a, opt) * s_val(0.0, x, b, opt);
        };
        spec.algebraic_decay_order = 3.0;
        break;
    case IdentityId::T1b:
    case IdentityId::T1b_p:
        spec.integrand = [a, b, opt](double x) {
            x = nudge(x, opt);
            const double c = std::cos(pi * x / 2.0);
            return c * c * s_val(0.0, x, a, opt) * s_val(0.0, x, b, opt);
        };
        spec.algebraic_decay_order = 4.0;
        break;
    default:
        spec.integrand = [a, b, opt](double x) {
            x = nudge(x, opt);
            const double sn = std::sin(pi * x / 2.0);
            return x * x * sn * sn * s_val(-1.0, x, a, opt) * s_val(-1.0, x, b, opt);
        };
        spec.algebraic_decay_order = 2.0;
        break;
    }
    return integrate_oscillatory(spec, s.quad_tol_osc, s.max_segments);
}

// int_0^inf sin(ut) s_{0,2n}(t) dt  or  int_0^inf cos(ut) s_{-1,2n+1}(t) dt.
inline QuadratureResult fourier_integral(parity par, unsigned n, double u, const Settings& s)
{
    const SeriesOptions opt = s.series;
    OscillatorySpec spec;
    spec.zero_spacing = 2.0 * pi;
    spec.algebraic_decay_order = 0.5;
    if (par == parity::even)
        spec.integrand = [n, u, opt](double t) { return std::sin(u * t) * s_integer_order(parity::even, n, t, opt); };
    else
        spec.integrand = [n, u, opt](double t) { return std::cos(u * t) * s_integer_order(parity::odd, n, t, opt); };
    return integrate_oscillatory(spec, s.quad_tol_osc, s.max_segments);
}

inline void note_unconverged(ReportRecord& r, const QuadratureResult& q)
{
    if (!q.converged) {
        if (!r.note.empty())
            r.note += "; ";
        r.note += "quadrature stopped at " + std::to_string(q.segments_used) + " segments";
        if (r.verdict == Verdict::fail)
            r.verdict = Verdict::unresolved;
    }
}

inline double sign_pow(unsigned n) { return n % 2 == 0 ? 1.0 : -1.0; }

} // namespace detail

/// Theorem 1, variants (a)..(c'): index integral over the order x against its
/// closed form in Struve / Bessel functions. Primed variants ignore b.
inline ReportRecord residual_theorem1(const IdentityCase& c, const Settings& s = {})
{
    using detail::pi;
    ReportRecord r;
    r.identity_case = c;
    const bool primed = c.id == IdentityId::T1a_p || c.id == IdentityId::T1b_p || c.id == IdentityId::T1c_p;
    const double a = detail::req(c.params.a, "a");
    const double b = primed ? a : detail::req(c.params.b, "b");
    if (primed)
        r.identity_case.params.b.reset();
    if (!detail::in_certified_range(a) || !detail::in_certified_range(b)) {
        r.note = "a, b outside the explored range (0, 5]";
        return r;
    }
    const double tol = tolerance_of(c);
    const QuadratureResult q = detail::index_integral(c.id, a, b, s);
    r.lhs = q.value;
    r.lhs_error_estimate = q.abs_error_estimate;

    auto h0 = [&](double z) { return struve_h0(z, s.series); };
    auto j0 = [&](double z) { return bessel_j0(z, s.series); };
    switch (c.id) {
    case IdentityId::T1a: {
        const EvalResult hm = h0(a - b);
        const EvalResult hp = h0(a + b);
        const double k = pi * pi / 4.0;
        const double err = k * (hm.abs_error_estimate + hp.abs_error_estimate);
        std::vector<FormResult> forms{{"theorem1", k * (hm.value - hp.value)}, {"eq5", k * (-hm.value - hp.value)}};
        detail::settle_forms(r, std::move(forms), {err, err}, tol, s);
        break;
    }
    case IdentityId::T1a_p: {
        const EvalResult h = h0(2.0 * a);
        r.rhs = -pi * pi / 4.0 * h.value;
        r.rhs_error_estimate = pi * pi / 4.0 * h.abs_error_estimate;
        detail::settle(r, tol);
        break;
    }
    case IdentityId::T1b:
    case IdentityId::T1c:
    case IdentityId::T1b_p:
    case IdentityId::T1c_p: {
        const EvalResult jm = j0(std::abs(a - b));
        const EvalResult jp = j0(a + b);
        const double sign = c.id == IdentityId::T1b || c.id == IdentityId::T1b_p ? -1.0 : 1.0;
        r.rhs = pi * pi / 8.0 * (jm.value + sign * jp.value);
        r.rhs_error_estimate = pi * pi / 8.0 * (jm.abs_error_estimate + jp.abs_error_estimate);
        detail::settle(r, tol);
        break;
    }
    default: throw numeric_error(error_kind::domain_error, "not a Theorem 1 identity");
    }
    detail::note_unconverged(r, q);
    return r;
}

/// T2_9a/T2_9b: series route against the Chebyshev-integral route.
inline ReportRecord residual_theorem2_rep(const IdentityCase& c, const Settings& s = {})
{
    ReportRecord r;
    r.identity_case = c;
    const unsigned n = detail::req_count(c.params.n, "n");
    const double t = detail::req(c.params.t, "t");
    const parity par = c.id == IdentityId::T2_9a ? parity::even : parity::odd;
    const EvalResult series = par == parity::even ? lommel_s({0.0, 2.0 * n, t}, s.series)
                                                  : lommel_s({-1.0, 2.0 * n + 1.0, t}, s.series);
    const EvalResult route = lommel_s_via_chebyshev(par, {n}, t, s.quad_tol_finite * 1e-2);
    r.lhs = series.value;
    r.lhs_error_estimate = series.abs_error_estimate;
    r.rhs = route.value;
    r.rhs_error_estimate = route.abs_error_estimate;
    detail::settle(r, tolerance_of(c));
    return r;
}

/// T2_8a/T2_8b: T_{2n}(u)/sqrt(1-u^2) (or the odd analogue) as a Fourier
/// integral of s_{0,2n} (s_{-1,2n+1}) over the argument. Both vanish for u > 1.
inline ReportRecord residual_theorem2_transform(const IdentityCase& c, const Settings& s = {})
{
    using detail::pi;
    ReportRecord r;
    r.identity_case = c;
    const unsigned n = detail::req_count(c.params.n, "n");
    const double u = detail::req(c.params.x, "u");
    if (!(u > 0.0))
        throw numeric_error(error_kind::domain_error, "u must be > 0");
    if (std::abs(u - 1.0) < 0.05) {
        r.note = "u within 0.05 of the 1/sqrt(1-u^2) singularity";
        return r;
    }
    const bool even = c.id == IdentityId::T2_8a;
    const unsigned order = even ? 2 * n : 2 * n + 1;
    r.lhs = u < 1.0 ? chebyshev_t(order, u) / std::sqrt(1.0 - u * u) : 0.0;
    r.lhs_error_estimate = 4.0 * DBL_EPSILON * std::abs(r.lhs);
    const QuadratureResult q = detail::fourier_integral(even ? parity::even : parity::odd, n, u, s);
    const double k = even ? detail::sign_pow(n) * 2.0 / pi : -detail::sign_pow(n) * (2.0 * n + 1.0) * 2.0 / pi;
    r.rhs = k * q.value;
    r.rhs_error_estimate = std::abs(k) * q.abs_error_estimate;
    detail::settle(r, tolerance_of(c));
    detail::note_unconverged(r, q);
    return r;
}

/// E10a, E10b, E11, E12, E15a, all sides from the series.
/// Params: m (order mu), x (order nu), a (argument).
inline ReportRecord residual_recurrence(const IdentityCase& c, const Settings& s = {})
{
    ReportRecord r;
    r.identity_case = c;
    const double x = detail::req(c.params.x, "x");
    const double a = detail::req(c.params.a, "a");
    const double tol = tolerance_of(c);
    const SeriesOptions& opt = s.series;
    switch (c.id) {
    case IdentityId::E10a: {
        // s_{0,x}(a) = (a - s_{2,x}(a)) / (1 - x^2)
        if (std::abs(1.0 - x * x) <= opt.integer_eps)
            throw numeric_error(error_kind::pole_at_order, "1 - x^2 = 0 at x=" + detail::num(x));
        const EvalResult lo = lommel_s({0.0, x, a}, opt);
        const EvalResult hi = lommel_s({2.0, x, a}, opt);
        r.lhs = lo.value;
        r.lhs_error_estimate = lo.abs_error_estimate;
        r.rhs = (a - hi.value) / (1.0 - x * x);
        r.rhs_error_estimate = (hi.abs_error_estimate + detail::rounding * (a + std::abs(hi.value))) / std::abs(1.0 - x * x);
        detail::settle(r, tol);
        break;
    }
    case IdentityId::E10b: {
        // Printed: s_{-1,x}(a) = x^-2 s_{1,x}(a). The mu-recurrence
        // s_{mu+2} = z^{mu+1} - ((mu+1)^2 - nu^2) s_mu gives (s_{1,x}(a) - 1) / x^2.
        if (std::abs(x) <= opt.integer_eps)
            throw numeric_error(error_kind::zero_order, "x^-2 with x=0");
        const EvalResult lo = lommel_s({-1.0, x, a}, opt);
        const EvalResult hi = lommel_s({1.0, x, a}, opt);
        r.lhs = lo.value;
        r.lhs_error_estimate = lo.abs_error_estimate;
        const double err = (hi.abs_error_estimate + detail::rounding * (1.0 + std::abs(hi.value))) / (x * x);
        std::vector<FormResult> forms{{"printed", hi.value / (x * x)}, {"corrected", (hi.value - 1.0) / (x * x)}};
        detail::settle_forms(r, std::move(forms), {err, err}, tol, s);
        break;
    }
    case IdentityId::E11: {
        const double m = detail::req(c.params.m, "m");
        const EvalResult direct = lommel_s({m, x, a}, opt);
        const EvalResult rec = lommel_recur_mu(m, x, a, opt);
        r.lhs = direct.value;
        r.lhs_error_estimate = direct.abs_error_estimate;
        r.rhs = rec.value;
        r.rhs_error_estimate = rec.abs_error_estimate;
        detail::settle(r, tol);
        break;
    }
    case IdentityId::E12: {
        const double m = detail::req(c.params.m, "m");
        const EvalResult d = lommel_s_derivative_series({m, x, a}, opt);
        const EvalResult rec = lommel_derivative(m, x, a, opt);
        r.lhs = d.value;
        r.lhs_error_estimate = d.abs_error_estimate;
        r.rhs = rec.value;
        r.rhs_error_estimate = rec.abs_error_estimate;
        detail::settle(r, tol);
        break;
    }
    case IdentityId::E15a: {
        // 2 s'_{mu,nu} = (nu-1) s_{mu-1,nu-1} - (nu+1) s_{mu-1,nu+1}, against a
        // central difference with step 1e-5.
        const double mu = c.params.m.value_or(0.0);
        constexpr double h = 1e-5;
        if (a <= h)
            throw numeric_error(error_kind::domain_error, "central difference needs a > 1e-5");
        const EvalResult up = lommel_s({mu, x, a + h}, opt);
        const EvalResult dn = lommel_s({mu, x, a - h}, opt);
        r.lhs = (up.value - dn.value) / (2.0 * h);
        r.lhs_error_estimate = (up.abs_error_estimate + dn.abs_error_estimate) / (2.0 * h);
        const EvalResult f = lommel_derivative_order_form(mu, x, a, opt);
        r.rhs = f.value;
        r.rhs_error_estimate = f.abs_error_estimate;
        detail::settle(r, tol);
        break;
    }
    default: throw numeric_error(error_kind::domain_error, "not a recurrence identity");
    }
    return r;
}

/// E13: U_{2n}(x) = (-1)^n T_{2n+1}(sqrt(1-x^2)) / sqrt(1-x^2).
inline ReportRecord residual_eq13(const IdentityCase& c, const Settings& = {})
{
    ReportRecord r;
    r.identity_case = c;
    const unsigned n = detail::req_count(c.params.n, "n");
    const double x = detail::req(c.params.x, "x");
    if (!(std::abs(x) < 1.0))
        throw numeric_error(error_kind::domain_error, "E13 needs |x| < 1");
    const double v = std::sqrt(1.0 - x * x);
    r.lhs = chebyshev_u(2 * n, x);
    r.rhs = detail::sign_pow(n) * chebyshev_t(2 * n + 1, v) / v;
    r.lhs_error_estimate = 8.0 * (n + 1) * DBL_EPSILON * std::max(1.0, std::abs(r.lhs));
    r.rhs_error_estimate = 8.0 * (n + 1) * DBL_EPSILON * std::max(1.0, std::abs(r.rhs));
    detail::settle(r, tolerance_of(c));
    return r;
}

/// E14 for U_{2n}(x) with I = int_0^inf cos(t sqrt(1-x^2)) s_{-1,2n+1}(t) dt:
///   printed      -(2n+1) I
///   two_over_pi  -(2n+1) (2/pi) I
///   composed     -(2n+1) (2/pi) x / sqrt(1-x^2) I   (T2_8b composed with E13)
inline ReportRecord residual_eq14(const IdentityCase& c, const Settings& s = {})
{
    using detail::pi;
    ReportRecord r;
    r.identity_case = c;
    const unsigned n = detail::req_count(c.params.n, "n");
    const double x = detail::req(c.params.x, "x");
    if (!(x > 0.0 && x < 1.0))
        throw numeric_error(error_kind::domain_error, "E14 needs 0 < x < 1");
    const double v = std::sqrt(1.0 - x * x);
    r.lhs = chebyshev_u(2 * n, x);
    r.lhs_error_estimate = 8.0 * (n + 1) * DBL_EPSILON * std::max(1.0, std::abs(r.lhs));
    const QuadratureResult q = detail::fourier_integral(parity::odd, n, v, s);
    const double base = -(2.0 * n + 1.0);
    const std::array<double, 3> k{base, base * 2.0 / pi, base * 2.0 / pi * x / v};
    std::vector<FormResult> forms{
        {"printed", k[0] * q.value}, {"two_over_pi", k[1] * q.value}, {"composed", k[2] * q.value}};
    std::vector<double> errs;
    for (double f : k)
        errs.push_back(std::abs(f) * q.abs_error_estimate);
    detail::settle_forms(r, std::move(forms), errs, tolerance_of(c), s);
    detail::note_unconverged(r, q);
    return r;
}

/// E15b: T_{2n+1}(x) + T_{2n-1}(x) = 2x T_{2n}(x), n >= 1.
inline ReportRecord residual_eq15b(const IdentityCase& c, const Settings& = {})
{
    ReportRecord r;
    r.identity_case = c;
    const unsigned n = detail::req_count(c.params.n, "n");
    if (n == 0)
        throw numeric_error(error_kind::invalid_order, "E15b needs n >= 1");
    const double x = detail::req(c.params.x, "x");
    r.lhs = chebyshev_t(2 * n + 1, x) + chebyshev_t(2 * n - 1, x);
    r.rhs = 2.0 * x * chebyshev_t(2 * n, x);
    const double scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
    r.lhs_error_estimate = 8.0 * n * DBL_EPSILON * scale;
    r.rhs_error_estimate = 8.0 * n * DBL_EPSILON * scale;
    detail::settle(r, tolerance_of(c));
    return r;
}

/// E16: sum_{k=0}^n (-1)^k s_{0,2k}(x) = pi/4 H0(x) + 1/2 int_0^1 sin(xu) U_{2n}(u)/sqrt(1-u^2) du.
inline ReportRecord residual_eq16(const IdentityCase& c, const Settings& s = {})
{
    using detail::pi;
    ReportRecord r;
    r.identity_case = c;
    const unsigned n = detail::req_count(c.params.n, "n");
    const double x = detail::req(c.params.x, "x");
    double lhs = 0.0;
    double lhs_err = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
        const EvalResult v = lommel_s({0.0, 2.0 * k, x}, s.series);
        lhs += detail::sign_pow(k) * v.value;
        lhs_err += v.abs_error_estimate;
    }
    r.lhs = lhs;
    r.lhs_error_estimate = lhs_err;
    const EvalResult h = struve_h0(x, s.series);
    AdaptiveOptions aopt;
    aopt.initial_panels = 1 + static_cast<std::size_t>(x / 4.0);
    const QuadratureResult q = integrate_cheb_weight(
        [x, n](double u) { return std::sin(x * u) * chebyshev_u(2 * n, u); }, s.quad_tol_finite, aopt);
    r.rhs = pi / 4.0 * h.value + 0.5 * q.value;
    r.rhs_error_estimate = pi / 4.0 * h.abs_error_estimate + 0.5 * q.abs_error_estimate;
    detail::settle(r, tolerance_of(c));
    return r;
}

/// E17 truncated at K:
///   sum_{k=0}^K J_{2k}(w) s_{0,2k}(t)
///   printed: pi/4 [H0(t-w) + H0(t+w) + 2 J0(w) H0(t)]
///   halved:  pi/8 [H0(t-w) + H0(t+w)] + pi/4 J0(w) H0(t)
inline ReportRecord residual_eq17(const IdentityCase& c, const Settings& s = {})
{
    using detail::pi;
    ReportRecord r;
    r.identity_case = c;
    const int K = detail::req(c.params.K, "K");
    if (K < 0)
        throw numeric_error(error_kind::invalid_order, "K must be >= 0");
    const double w = detail::req(c.params.w, "w");
    const double t = detail::req(c.params.t, "t");
    double lhs = 0.0;
    double lhs_err = 0.0;
    for (int k = 0; k <= K; ++k) {
        const EvalResult j = bessel_j2k(k, w, s.series);
        const EvalResult v = lommel_s({0.0, 2.0 * k, t}, s.series);
        lhs += j.value * v.value;
        lhs_err += std::abs(j.value) * v.abs_error_estimate + std::abs(v.value) * j.abs_error_estimate;
    }
    r.lhs = lhs;
    r.lhs_error_estimate = lhs_err;
    const EvalResult hm = struve_h0(t - w, s.series);
    const EvalResult hp = struve_h0(t + w, s.series);
    const EvalResult h0 = struve_h0(t, s.series);
    const EvalResult j0 = bessel_j0(w, s.series);
    const double pair = hm.value + hp.value;
    const double pair_err = hm.abs_error_estimate + hp.abs_error_estimate;
    const double cross = j0.value * h0.value;
    const double cross_err = std::abs(j0.value) * h0.abs_error_estimate + std::abs(h0.value) * j0.abs_error_estimate;
    std::vector<FormResult> forms{{"printed", pi / 4.0 * (pair + 2.0 * cross)}, {"halved", pi / 8.0 * pair + pi / 4.0 * cross}};
    const double e1 = pi / 4.0 * (pair_err + 2.0 * cross_err);
    const double e2 = pi / 8.0 * pair_err + pi / 4.0 * cross_err;
    detail::settle_forms(r, std::move(forms), {e1, e2}, tolerance_of(c), s);
    return r;
}

/// Dispatches one case. Numeric failures become an unresolved record whose
/// note carries the error; evaluate never throws numeric_error.
inline ReportRecord evaluate(const IdentityCase& c, const Settings& s = {})
{
    const auto start = std::chrono::steady_clock::now();
    ReportRecord r;
    try {
        switch (c.id) {
        case IdentityId::T1a:
        case IdentityId::T1a_p:
        case IdentityId::T1b:
        case IdentityId::T1b_p:
        case IdentityId::T1c:
        case IdentityId::T1c_p: r = residual_theorem1(c, s); break;
        case IdentityId::T2_9a:
        case IdentityId::T2_9b: r = residual_theorem2_rep(c, s); break;
        case IdentityId::T2_8a:
        case IdentityId::T2_8b: r = residual_theorem2_transform(c, s); break;
        case IdentityId::E10a:
        case IdentityId::E10b:
        case IdentityId::E11:
        case IdentityId::E12:
        case IdentityId::E15a: r = residual_recurrence(c, s); break;
        case IdentityId::E13: r = residual_eq13(c, s); break;
        case IdentityId::E14: r = residual_eq14(c, s); break;
        case IdentityId::E15b: r = residual_eq15b(c, s); break;
        case IdentityId::E16: r = residual_eq16(c, s); break;
        case IdentityId::E17: r = residual_eq17(c, s); break;
        }
    } catch (const numeric_error& e) {
        r = ReportRecord{};
        r.identity_case = c;
        r.verdict = Verdict::unresolved;
        r.note = e.what();
    }
    if (s.record_timing)
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Parameter lists the suites are built from.
struct GridSpec {
    std::vector<double> a{0.5, 1.0, 2.0};
    std::vector<double> b{0.5, 1.0, 2.0};
    std::vector<int> n{0, 1, 2, 3, 4, 5};
    std::vector<double> t{0.5, 1.0, 2.0, 5.0};
    std::vector<double> x{0.5, 1.0, 2.0, 5.0};
    std::vector<double> w{0.5, 1.0, 2.0};
    std::vector<int> K{40, 60};
    /// Frequencies of T2_8a/T2_8b; 1.2 lies outside the support.
    std::vector<double> u{0.3, 0.5, 0.7, 1.2};
    /// Chebyshev arguments for E13-E15b.
    std::vector<double> y{0.3, 0.5, 0.7};
    std::vector<double> m{0.0, 1.0};
    /// Real orders for the recurrences.
    std::vector<double> nu{0.5, 1.5, 2.5, 3.7};

    bool operator==(const GridSpec&) const = default;
};

/// Enumerates the cases of one identity over the grid in a fixed order.
inline std::vector<IdentityCase> build_cases(IdentityId id, const GridSpec& g)
{
    std::vector<IdentityCase> out;
    auto add = [&](CaseParams p) { out.push_back({id, p, 0.0}); };
    switch (id) {
    case IdentityId::T1a:
    case IdentityId::T1b:
    case IdentityId::T1c:
        for (double a : g.a)
            for (double b : g.b)
                add({.a = a, .b = b});
        break;
    case IdentityId::T1a_p:
    case IdentityId::T1b_p:
    case IdentityId::T1c_p:
        for (double a : g.a)
            add({.a = a});
        break;
    case IdentityId::T2_9a:
    case IdentityId::T2_9b:
        for (int n : g.n)
            for (double t : g.t)
                add({.t = t, .n = n});
        break;
    case IdentityId::T2_8a:
    case IdentityId::T2_8b:
        for (int n : g.n)
            if (n <= 4)
                for (double u : g.u)
                    add({.x = u, .n = n});
        break;
    case IdentityId::E13:
    case IdentityId::E14:
        for (int n : g.n)
            if (n <= 3)
                for (double y : g.y)
                    add({.x = y, .n = n});
        break;
    case IdentityId::E15b:
        for (int n : g.n)
            if (n >= 1)
                for (double y : g.y)
                    add({.x = y, .n = n});
        break;
    case IdentityId::E10a:
    case IdentityId::E10b:
        for (double nu : g.nu)
            for (double a : g.a)
                add({.a = a, .x = nu});
        break;
    case IdentityId::E11:
    case IdentityId::E12:
        for (double m : g.m)
            for (double nu : g.nu)
                for (double a : g.a)
                    add({.a = a, .x = nu, .m = m});
        break;
    case IdentityId::E15a:
        // E15a is stated for mu = 0, nu = 2n.
        for (int n : g.n)
            if (n >= 1 && n <= 3)
                for (double a : g.a)
                    add({.a = a, .x = 2.0 * n, .m = 0.0});
        break;
    case IdentityId::E16:
        for (int n : g.n)
            for (double x : g.x)
                add({.x = x, .n = n});
        break;
    case IdentityId::E17:
        for (int K : g.K)
            for (double w : g.w)
                for (double t : g.t)
                    if (t <= 3.0)
                        add({.t = t, .w = w, .K = K});
        break;
    }
    return out;
}

inline std::vector<IdentityId> suite_identities(std::string_view suite)
{
    std::vector<IdentityId> out;
    for (IdentityId id : all_identities)
        if (suite == "all" || suite_of(id) == suite)
            out.push_back(id);
    return out;
}

inline std::vector<IdentityCase> build_suite(std::string_view suite, const GridSpec& g)
{
    std::vector<IdentityCase> out;
    for (IdentityId id : suite_identities(suite)) {
        auto part = build_cases(id, g);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// Evaluates every case, in parallel, returning records in case order.
inline std::vector<ReportRecord> run_grid(const std::vector<IdentityCase>& cases, const Settings& s = {})
{
    std::vector<ReportRecord> out(cases.size());
    if (cases.empty())
        return out;
    unsigned threads = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cases.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++)
            out[i] = evaluate(cases[i], s);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    return out;
}

} // namespace lommel
