#pragma once

// Ascending-series evaluators for the Lommel function s_{mu,nu}(z) and the
// companion functions the index integrals need (Struve H0, Bessel J0 and
// J_{2k}, Chebyshev T_n and U_n), plus the order recurrences of s_{mu,nu}.
//
// All routines are pure; results are plain values.

#include "lommel/error.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>

namespace lommel {

struct SeriesOptions {
    double series_eps = 1e-16;
    std::size_t max_terms = 500;
    /// Distance from an integer below which an order combination counts as
    /// a pole or a degenerate 1F2 parameter.
    double integer_eps = 1e-9;
    /// Largest |x| accepted by hyp1f2; |z| <= 200 for the Lommel function.
    double max_abs_argument = 1e4;
};

struct EvalResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t terms_used = 0;
};

struct LommelParams {
    double mu = 0.0;
    double nu = 0.0;
    double z = 0.0;
};

/// Degree index for the Chebyshev connection; the polynomial used is
/// T_{2n} (even parity) or T_{2n+1} (odd parity).
struct ChebDegree {
    unsigned n = 0;
};

enum class parity { even, odd };

namespace detail {

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline bool near_nonpositive_integer(double b, double eps)
{
    return b < 0.5 && std::abs(b - std::round(b)) <= eps;
}

struct series_terms {
    double sum = 0.0;
    double abs_sum = 0.0;
    double weighted = 0.0;
    double abs_weighted = 0.0;
    double tail = 0.0;
    double weighted_tail = 0.0;
    std::size_t terms = 0;
};

// Sums t_k and weight(k)*t_k for t_k the k-th term of 1F2(1; b1, b2; x).
// The stopping test is only trusted once every later denominator factor is
// positive and the term ratio is below one, so the remaining terms shrink
// monotonically.
template <class Weight>
series_terms hyp1f2_terms(double b1, double b2, double x, const SeriesOptions& opt, Weight weight)
{
    series_terms r;
    double t = 1.0;
    r.sum = 1.0;
    r.abs_sum = 1.0;
    r.weighted = weight(0);
    r.abs_weighted = std::abs(r.weighted);
    std::size_t small = 0;
    for (std::size_t k = 0; k < opt.max_terms; ++k) {
        const double kk = static_cast<double>(k);
        t *= x / ((b1 + kk) * (b2 + kk));
        const double wt = weight(k + 1) * t;
        r.sum += t;
        r.abs_sum += std::abs(t);
        r.weighted += wt;
        r.abs_weighted += std::abs(wt);

        const double d1 = b1 + kk + 1.0;
        const double d2 = b2 + kk + 1.0;
        const double next_ratio = std::abs(x) / (d1 * d2);
        const bool monotone = d1 > 0.0 && d2 > 0.0 && next_ratio < 1.0;
        if (std::abs(t) <= opt.series_eps * std::abs(r.sum))
            ++small;
        else
            small = 0;
        if (monotone && small >= 2) {
            const double geo = next_ratio / (1.0 - next_ratio);
            r.tail = std::abs(t) * geo;
            r.weighted_tail = std::abs(wt) * geo * 2.0;
            r.terms = k + 2;
            return r;
        }
    }
    throw numeric_error(error_kind::no_convergence,
        "1F2 series did not meet its stopping rule within " + std::to_string(opt.max_terms) + " terms");
}

inline void check_lommel_orders(double mu, double nu, const SeriesOptions& opt)
{
    if (std::abs(std::abs(mu + 1.0) - std::abs(nu)) <= opt.integer_eps)
        throw numeric_error(error_kind::pole_at_order,
            "(mu+1)^2 = nu^2 at mu=" + num(mu) + ", nu=" + num(nu));
    const double b1 = (mu - nu + 3.0) / 2.0;
    const double b2 = (mu + nu + 3.0) / 2.0;
    if (near_nonpositive_integer(b1, opt.integer_eps))
        throw numeric_error(error_kind::degenerate_parameter,
            "(mu-nu+3)/2 is a nonpositive integer at mu=" + num(mu) + ", nu=" + num(nu));
    if (near_nonpositive_integer(b2, opt.integer_eps))
        throw numeric_error(error_kind::degenerate_parameter,
            "(mu+nu+3)/2 is a nonpositive integer at mu=" + num(mu) + ", nu=" + num(nu));
}

constexpr double rounding = 4.0 * DBL_EPSILON;

} // namespace detail

/// 1F2(1; b1, b2; x) by the term recurrence t_{k+1} = t_k x / ((b1+k)(b2+k)).
inline EvalResult hyp1f2(double b1, double b2, double x, const SeriesOptions& opt = {})
{
    if (detail::near_nonpositive_integer(b1, opt.integer_eps))
        throw numeric_error(error_kind::degenerate_parameter, "b1=" + detail::num(b1) + " is a nonpositive integer");
    if (detail::near_nonpositive_integer(b2, opt.integer_eps))
        throw numeric_error(error_kind::degenerate_parameter, "b2=" + detail::num(b2) + " is a nonpositive integer");
    if (!(std::abs(x) <= opt.max_abs_argument))
        throw numeric_error(error_kind::domain_error,
            "|x|=" + detail::num(std::abs(x)) + " exceeds the configured limit " + detail::num(opt.max_abs_argument));
    if (x == 0.0)
        return {1.0, 0.0, 1};
    const auto s = detail::hyp1f2_terms(b1, b2, x, opt, [](std::size_t) { return 1.0; });
    return {s.sum, s.tail + detail::rounding * s.abs_sum, s.terms};
}

/// s_{mu,nu}(z) = z^{mu+1} / ((mu+1)^2 - nu^2) * 1F2(1; (mu-nu+3)/2, (mu+nu+3)/2; -z^2/4).
///
/// The error estimate carries the cancellation of the alternating series, so
/// it widens by roughly e^z / z for large arguments instead of refusing them.
inline EvalResult lommel_s(const LommelParams& p, const SeriesOptions& opt = {})
{
    if (!(p.z >= 0.0))
        throw numeric_error(error_kind::domain_error, "argument z must be >= 0, got " + detail::num(p.z));
    detail::check_lommel_orders(p.mu, p.nu, opt);
    const double denom = (p.mu + 1.0) * (p.mu + 1.0) - p.nu * p.nu;
    if (p.z == 0.0) {
        if (std::abs(p.mu + 1.0) <= opt.integer_eps)
            return {1.0 / denom, 0.0, 1};
        if (p.mu > -1.0)
            return {0.0, 0.0, 1};
        throw numeric_error(error_kind::domain_error, "s_{mu,nu}(0) is unbounded for mu < -1");
    }
    const double b1 = (p.mu - p.nu + 3.0) / 2.0;
    const double b2 = (p.mu + p.nu + 3.0) / 2.0;
    const EvalResult f = hyp1f2(b1, b2, -p.z * p.z / 4.0, opt);
    const double pref = std::pow(p.z, p.mu + 1.0) / denom;
    const double value = pref * f.value;
    return {value, std::abs(pref) * f.abs_error_estimate + detail::rounding * std::abs(value), f.terms_used};
}

/// d/dz s_{mu,nu}(z) by term-by-term differentiation of the series.
inline EvalResult lommel_s_derivative_series(const LommelParams& p, const SeriesOptions& opt = {})
{
    if (!(p.z >= 0.0))
        throw numeric_error(error_kind::domain_error, "argument z must be >= 0, got " + detail::num(p.z));
    detail::check_lommel_orders(p.mu, p.nu, opt);
    const double denom = (p.mu + 1.0) * (p.mu + 1.0) - p.nu * p.nu;
    if (p.z == 0.0) {
        if (std::abs(p.mu) <= opt.integer_eps)
            return {1.0 / denom, 0.0, 1};
        if (p.mu > 0.0)
            return {0.0, 0.0, 1};
        throw numeric_error(error_kind::domain_error, "s'_{mu,nu}(0) is unbounded for mu < 0");
    }
    const double b1 = (p.mu - p.nu + 3.0) / 2.0;
    const double b2 = (p.mu + p.nu + 3.0) / 2.0;
    const double x = -p.z * p.z / 4.0;
    if (std::abs(x) > opt.max_abs_argument)
        throw numeric_error(error_kind::domain_error, "argument exceeds the configured limit");
    const auto s = detail::hyp1f2_terms(b1, b2, x, opt,
        [mu = p.mu](std::size_t k) { return mu + 1.0 + 2.0 * static_cast<double>(k); });
    const double pref = std::pow(p.z, p.mu) / denom;
    const double value = pref * s.weighted;
    const double err = std::abs(pref) * (s.weighted_tail + detail::rounding * s.abs_weighted)
        + detail::rounding * std::abs(value);
    return {value, err, s.terms};
}

/// Struve H0 from its odd ascending series sum_k (-1)^k (z/2)^{2k+1} / Gamma(k+3/2)^2.
/// Gamma(k+3/2) is advanced by the upward recurrence from Gamma(3/2) = sqrt(pi)/2,
/// folded into the term ratio so no power or gamma call can overflow.
inline EvalResult struve_h0(double z, const SeriesOptions& opt = {})
{
    if (z == 0.0)
        return {0.0, 0.0, 1};
    const double sign = z < 0.0 ? -1.0 : 1.0;
    const double y = std::abs(z);
    const double q = (y / 2.0) * (y / 2.0);
    double t = 2.0 * y / std::numbers::pi; // (y/2) / Gamma(3/2)^2
    double sum = t;
    double abs_sum = std::abs(t);
    std::size_t small = 0;
    for (std::size_t k = 0; k < opt.max_terms; ++k) {
        const double g = static_cast<double>(k) + 1.5; // Gamma(k+5/2) = (k+3/2) Gamma(k+3/2)
        t *= -q / (g * g);
        sum += t;
        abs_sum += std::abs(t);
        small = std::abs(t) <= opt.series_eps * std::abs(sum) ? small + 1 : 0;
        const double g_next = g + 1.0;
        const double ratio = q / (g_next * g_next);
        if (small >= 2 && ratio < 1.0) {
            const double err = std::abs(t) * ratio / (1.0 - ratio) + detail::rounding * abs_sum;
            return {sign * sum, err, k + 2};
        }
    }
    throw numeric_error(error_kind::no_convergence, "Struve H0 series exceeded max_terms at z=" + detail::num(z));
}

/// J0 by its ascending series.
inline EvalResult bessel_j0(double z, const SeriesOptions& opt = {})
{
    const double q = (z / 2.0) * (z / 2.0);
    double t = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    if (z == 0.0)
        return {1.0, 0.0, 1};
    std::size_t small = 0;
    for (std::size_t k = 0; k < opt.max_terms; ++k) {
        const double kk = static_cast<double>(k) + 1.0;
        t *= -q / (kk * kk);
        sum += t;
        abs_sum += std::abs(t);
        small = std::abs(t) <= opt.series_eps * std::abs(sum) ? small + 1 : 0;
        const double ratio = q / ((kk + 1.0) * (kk + 1.0));
        if (small >= 2 && ratio < 1.0)
            return {sum, std::abs(t) * ratio / (1.0 - ratio) + detail::rounding * abs_sum, k + 2};
    }
    throw numeric_error(error_kind::no_convergence, "J0 series exceeded max_terms at z=" + detail::num(z));
}

/// J_{2k}(w). Ascending series for |w| <= 10, otherwise Miller's backward
/// recurrence normalised by J0 + 2 sum_{j>=1} J_{2j} = 1.
inline EvalResult bessel_j2k(int k, double w, const SeriesOptions& opt = {})
{
    if (k < 0)
        throw numeric_error(error_kind::invalid_order, "order index k must be >= 0, got " + std::to_string(k));
    if (k == 0)
        return bessel_j0(w, opt);
    const double aw = std::abs(w);
    if (aw == 0.0)
        return {0.0, 0.0, 1};
    const int order = 2 * k;

    if (aw <= 10.0) {
        const double q = (aw / 2.0) * (aw / 2.0);
        double t = std::exp(order * std::log(aw / 2.0) - std::lgamma(order + 1.0));
        if (t == 0.0)
            return {0.0, DBL_MIN, 1};
        double sum = t;
        double abs_sum = t;
        std::size_t small = 0;
        for (std::size_t m = 0; m < opt.max_terms; ++m) {
            const double mm = static_cast<double>(m) + 1.0;
            t *= -q / (mm * (mm + order));
            sum += t;
            abs_sum += std::abs(t);
            small = std::abs(t) <= opt.series_eps * std::abs(sum) ? small + 1 : 0;
            const double ratio = q / ((mm + 1.0) * (mm + 1.0 + order));
            if (small >= 2 && ratio < 1.0)
                return {sum, std::abs(t) * ratio / (1.0 - ratio) + detail::rounding * abs_sum, m + 2};
        }
        throw numeric_error(error_kind::no_convergence, "J_2k series exceeded max_terms");
    }

    const double top = std::max(static_cast<double>(order), aw);
    int start = static_cast<int>(top + std::sqrt(160.0 * top)) + 20;
    start += start % 2;
    double above = 0.0;
    double cur = 1e-30;
    double result = 0.0;
    double norm = 0.0;
    for (int m = start; m > 0; --m) {
        const double below = 2.0 * m / aw * cur - above; // J_{m-1}
        above = cur;
        cur = below;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            above *= 1e-250;
            result *= 1e-250;
            norm *= 1e-250;
        }
        const int idx = m - 1;
        if (idx == order)
            result = cur;
        if (idx > 0 && idx % 2 == 0)
            norm += 2.0 * cur;
    }
    norm += cur;
    const double value = result / norm;
    return {value, 64.0 * DBL_EPSILON * (std::abs(value) + DBL_EPSILON), static_cast<std::size_t>(start)};
}

/// T_n(x) by T_{n+1} = 2x T_n - T_{n-1}.
inline double chebyshev_t(unsigned n, double x) noexcept
{
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double cur = x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// U_n(x) by the same recurrence with U_0 = 1, U_1 = 2x.
inline double chebyshev_u(unsigned n, double x) noexcept
{
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Order-lowering recurrence
///   s_{m,x}(a) = a/(2x) [ (m+x-1) s_{m-1,x-1}(a) - (m-x-1) s_{m-1,x+1}(a) ].
inline EvalResult lommel_recur_mu(double m, double x, double a, const SeriesOptions& opt = {})
{
    if (std::abs(x) <= opt.integer_eps)
        throw numeric_error(error_kind::zero_order, "the recurrence divides by 2x and x=0");
    const EvalResult lo = lommel_s({m - 1.0, x - 1.0, a}, opt);
    const EvalResult hi = lommel_s({m - 1.0, x + 1.0, a}, opt);
    const double c_lo = m + x - 1.0;
    const double c_hi = m - x - 1.0;
    const double f = a / (2.0 * x);
    const double value = f * (c_lo * lo.value - c_hi * hi.value);
    const double err = std::abs(f) * (std::abs(c_lo) * lo.abs_error_estimate + std::abs(c_hi) * hi.abs_error_estimate)
        + detail::rounding * std::abs(f) * (std::abs(c_lo * lo.value) + std::abs(c_hi * hi.value));
    return {value, err, lo.terms_used + hi.terms_used};
}

/// d/da s_{m,x}(a) = 1/2 [ (m+x-1) s_{m-1,x-1}(a) + (m-x-1) s_{m-1,x+1}(a) ].
inline EvalResult lommel_derivative(double m, double x, double a, const SeriesOptions& opt = {})
{
    const EvalResult lo = lommel_s({m - 1.0, x - 1.0, a}, opt);
    const EvalResult hi = lommel_s({m - 1.0, x + 1.0, a}, opt);
    const double c_lo = m + x - 1.0;
    const double c_hi = m - x - 1.0;
    const double value = 0.5 * (c_lo * lo.value + c_hi * hi.value);
    const double err = 0.5 * (std::abs(c_lo) * lo.abs_error_estimate + std::abs(c_hi) * hi.abs_error_estimate)
        + detail::rounding * 0.5 * (std::abs(c_lo * lo.value) + std::abs(c_hi * hi.value));
    return {value, err, lo.terms_used + hi.terms_used};
}

/// 1/2 [ (nu-1) s_{mu-1,nu-1}(a) - (nu+1) s_{mu-1,nu+1}(a) ].
/// Coincides with lommel_derivative only for mu = 0.
inline EvalResult lommel_derivative_order_form(double mu, double nu, double a, const SeriesOptions& opt = {})
{
    const EvalResult lo = lommel_s({mu - 1.0, nu - 1.0, a}, opt);
    const EvalResult hi = lommel_s({mu - 1.0, nu + 1.0, a}, opt);
    const double value = 0.5 * ((nu - 1.0) * lo.value - (nu + 1.0) * hi.value);
    const double err = 0.5 * (std::abs(nu - 1.0) * lo.abs_error_estimate + std::abs(nu + 1.0) * hi.abs_error_estimate)
        + detail::rounding * 0.5 * (std::abs((nu - 1.0) * lo.value) + std::abs((nu + 1.0) * hi.value));
    return {value, err, lo.terms_used + hi.terms_used};
}

} // namespace lommel
