#pragma once

// Semi-infinite oscillatory integrals int_0^inf f(x) dx.
//
// [0, inf) is cut into segments of length zero_spacing, each integrated with
// fixed Gauss-Legendre panels. The sequence of partial sums is then either
//   - closed with a fitted c/x^p tail when the last segment integrals are
//     one-signed and p > 1 (absolutely convergent, monotone tail), or
//   - extrapolated with Wynn's epsilon algorithm otherwise (alternating or
//     irregularly oscillating partial sums, including conditionally
//     convergent integrals).
//
// zero_spacing only has to make the oscillation of the partial sums regular.
// For integrands that mix frequencies 1 and 1 +- u (products of a Bessel-type
// function with cos(ut)), a spacing of 2 pi folds every component onto the
// same phase step 2 pi u.

#include "lommel/acceleration.hpp"
#include "lommel/error.hpp"
#include "lommel/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lommel {

struct OscillatorySpec {
    std::function<double(double)> integrand;
    /// Segment length; the distance between sign changes of the oscillatory
    /// factor or a multiple of it.
    double zero_spacing = 1.0;
    /// p in |f| ~ c / x^p. Must exceed 1 for the tail model to be used.
    double algebraic_decay_order = 2.0;
};

struct OscillatoryOptions {
    std::size_t min_segments = 8;
    int gauss_order = 20;
    std::size_t panels_per_segment = 2;
    /// Segments inspected to classify the sign pattern and fit the tail.
    std::size_t tail_window = 8;
    /// Most recent partial sums fed to the epsilon table.
    std::size_t acceleration_window = 50;
};

namespace detail {

enum class sign_pattern { zero, one_signed, alternating, irregular };

inline sign_pattern classify(std::span<const double> seg)
{
    bool all_zero = true;
    bool pos = false;
    bool neg = false;
    bool alternating = true;
    for (std::size_t i = 0; i < seg.size(); ++i) {
        if (seg[i] != 0.0)
            all_zero = false;
        pos = pos || seg[i] > 0.0;
        neg = neg || seg[i] < 0.0;
        if (i > 0 && !(seg[i] * seg[i - 1] < 0.0))
            alternating = false;
    }
    if (all_zero)
        return sign_pattern::zero;
    if (!(pos && neg))
        return sign_pattern::one_signed;
    return alternating ? sign_pattern::alternating : sign_pattern::irregular;
}

// Least-squares slope of log|I_k| against log(x_k); nullopt-like NaN when
// the data cannot support a fit.
inline double measured_decay(std::span<const double> seg, std::size_t first, double h)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < seg.size(); ++i) {
        if (seg[i] == 0.0)
            return std::nan("");
        const double lx = std::log((static_cast<double>(first + i) + 0.5) * h);
        const double ly = std::log(std::abs(seg[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double dn = static_cast<double>(n);
    const double den = dn * sxx - sx * sx;
    if (n < 4 || den <= 0.0)
        return std::nan("");
    return -(dn * sxy - sx * sy) / den;
}

} // namespace detail

/// Integrates spec.integrand over [0, inf).
///
/// The error estimate at n segments is |E_n - E_{n-d}| with d = max(2, n/4),
/// E the extrapolated value; convergence needs two successive estimates at or
/// below tol. When max_segments is reached first the last extrapolation is
/// returned with converged = false. NoConvergence is raised only if no finite
/// estimate exists; SpecMismatch if, after at least 20 segments, the measured envelope decay differs from
/// algebraic_decay_order by more than one.
inline QuadratureResult integrate_oscillatory(
    const OscillatorySpec& spec, double tol, std::size_t max_segments, const OscillatoryOptions& opt = {})
{
    if (!spec.integrand)
        throw numeric_error(error_kind::domain_error, "oscillatory spec has no integrand");
    if (!(spec.zero_spacing > 0.0))
        throw numeric_error(error_kind::domain_error, "zero_spacing must be positive");
    if (!(spec.algebraic_decay_order > 0.0))
        throw numeric_error(error_kind::domain_error, "algebraic_decay_order must be positive");
    if (max_segments < 3)
        throw numeric_error(error_kind::domain_error, "need at least 3 segments");

    const double h = spec.zero_spacing;
    const double p = spec.algebraic_decay_order;
    const GaussRule& rule = gauss_legendre(opt.gauss_order);
    const std::size_t panels = std::max<std::size_t>(1, opt.panels_per_segment);
    const auto& f = spec.integrand;

    std::vector<double> seg;
    std::vector<double> partial;
    std::vector<double> estimate(1, 0.0);
    std::vector<double> error(1, 0.0);
    std::vector<double> tail_at(1, 0.0);
    seg.reserve(max_segments);
    partial.reserve(max_segments);
    double sum = 0.0;
    double abs_sum = 0.0;
    QuadratureResult r;

    for (std::size_t n = 1; n <= max_segments; ++n) {
        const double x0 = static_cast<double>(n - 1) * h;
        const double width = h / static_cast<double>(panels);
        double piece = 0.0;
        for (std::size_t j = 0; j < panels; ++j) {
            const double a = x0 + width * static_cast<double>(j);
            piece += detail::gauss_panel(rule, f, a, a + width);
        }
        if (!std::isfinite(piece))
            throw numeric_error(error_kind::no_convergence,
                "integrand is not finite on segment starting at x=" + std::to_string(x0));
        seg.push_back(piece);
        sum += piece;
        abs_sum += std::abs(piece);
        partial.push_back(sum);

        double est = sum;
        double tail = 0.0;
        const std::size_t w = std::min(opt.tail_window, n);
        const std::span<const double> last(seg.data() + (n - w), w);
        const auto pattern = detail::classify(last);
        bool use_tail = pattern == detail::sign_pattern::one_signed && p > 1.0 && n >= 4;
        if (use_tail) {
            std::vector<std::pair<double, double>> samples;
            samples.reserve(w);
            for (std::size_t k = n - w; k < n; ++k)
                samples.emplace_back((static_cast<double>(k) + 0.5) * h, seg[k] / h);
            try {
                tail = tail_power_estimate(samples, p, static_cast<double>(n) * h);
                est = sum + tail;
            } catch (const numeric_error&) {
                use_tail = false;
                tail = 0.0;
            }
        }
        if (!use_tail && pattern != detail::sign_pattern::zero && n >= 3) {
            const std::size_t m = std::min(opt.acceleration_window, n);
            est = wynn_epsilon(std::span<const double>(partial.data() + (n - m), m));
        }
        estimate.push_back(est);
        tail_at.push_back(tail);

        const std::size_t back = std::max<std::size_t>(2, n / 4);
        const double floor = 16.0 * DBL_EPSILON * abs_sum;
        const double err = n > back && n >= 3 ? std::abs(est - estimate[n - back]) + floor : INFINITY;
        error.push_back(err);

        r.value = est;
        r.abs_error_estimate = err;
        r.segments_used = n;
        r.tail_contribution = tail;
        if (n >= opt.min_segments && err <= tol && error[n - 1] <= tol) {
            r.converged = true;
            break;
        }
    }

    if (!std::isfinite(r.value) || !std::isfinite(r.abs_error_estimate))
        throw numeric_error(error_kind::no_convergence,
            "no finite extrapolation after " + std::to_string(r.segments_used) + " segments");

    const std::size_t n = seg.size();
    if (n >= 20) {
        const std::size_t first = n / 2;
        const std::span<const double> window(seg.data() + first, n - first);
        const auto pattern = detail::classify(window);
        if (pattern == detail::sign_pattern::one_signed || pattern == detail::sign_pattern::alternating) {
            const double measured = detail::measured_decay(window, first, h);
            if (std::isfinite(measured) && std::abs(measured - p) > 1.0)
                throw numeric_error(error_kind::spec_mismatch,
                    "envelope decays like x^-" + std::to_string(measured) + ", spec says x^-" + std::to_string(p));
        }
    }
    return r;
}

} // namespace lommel
