#pragma once

#include "lommel/error.hpp"
#include "lommel/quadrature.hpp"
#include "lommel/specfun.hpp"

#include <cmath>
#include <cstddef>

namespace lommel {

/// Second evaluation route for integer orders:
///   even: s_{0,2n}(t)    = (-1)^n          int_0^1 sin(ut) T_{2n}(u)   / sqrt(1-u^2) du
///   odd:  s_{-1,2n+1}(t) = (-1)^{n+1}/(2n+1) int_0^1 cos(ut) T_{2n+1}(u) / sqrt(1-u^2) du
/// Accurate for any t because it never sums the alternating series; cost
/// grows linearly with t.
inline EvalResult lommel_s_via_chebyshev(parity par, ChebDegree deg, double t, double tol = 1e-12)
{
    if (!(t >= 0.0))
        throw numeric_error(error_kind::domain_error, "argument t must be >= 0");
    AdaptiveOptions opt;
    opt.initial_panels = 1 + static_cast<std::size_t>(t / 4.0);
    const unsigned n = deg.n;
    const double sign_n = n % 2 == 0 ? 1.0 : -1.0;
    if (par == parity::even) {
        const unsigned order = 2 * n;
        const auto q = integrate_cheb_weight(
            [t, order](double u) { return std::sin(u * t) * chebyshev_t(order, u); }, tol, opt);
        return {sign_n * q.value, q.abs_error_estimate, q.segments_used};
    }
    const unsigned order = 2 * n + 1;
    const auto q = integrate_cheb_weight(
        [t, order](double u) { return std::cos(u * t) * chebyshev_t(order, u); }, tol, opt);
    const double scale = -sign_n / static_cast<double>(order);
    return {scale * q.value, std::abs(scale) * q.abs_error_estimate, q.segments_used};
}

} // namespace lommel
