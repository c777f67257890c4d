#pragma once

// Finite-interval quadrature: Gauss-Legendre rules, a globally adaptive
// bisection driver, and integrals against the Chebyshev weight on [0, 1].

#include "lommel/error.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace lommel {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    bool converged = false;
    std::size_t segments_used = 0;
    /// Contribution of the fitted algebraic tail; zero on finite intervals.
    double tail_contribution = 0.0;
};

struct GaussRule {
    std::vector<double> nodes;   // ascending, on [-1, 1]
    std::vector<double> weights;
};

inline constexpr int min_gauss_order = 2;
inline constexpr int max_gauss_order = 64;

namespace detail {

inline GaussRule build_gauss_legendre(int n)
{
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi's initial guess, then Newton on P_n in extended precision.
        long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L;
            long double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-19L)
                break;
        }
        // Re-evaluate the derivative at the converged node.
        long double p0 = 1.0L;
        long double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0L);
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = static_cast<double>(-x);
        rule.nodes[hi] = static_cast<double>(x);
        rule.weights[lo] = static_cast<double>(w);
        rule.weights[hi] = static_cast<double>(w);
    }
    if (n % 2 == 1)
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

inline const std::array<GaussRule, max_gauss_order + 1>& gauss_table()
{
    static const auto table = [] {
        std::array<GaussRule, max_gauss_order + 1> t{};
        for (int n = min_gauss_order; n <= max_gauss_order; ++n)
            t[static_cast<std::size_t>(n)] = build_gauss_legendre(n);
        return t;
    }();
    return table;
}

template <class F>
double gauss_panel(const GaussRule& rule, F& f, double a, double b)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

} // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1] for 2 <= order <= 64.
inline const GaussRule& gauss_legendre(int order)
{
    if (order < min_gauss_order || order > max_gauss_order)
        throw numeric_error(error_kind::unsupported_order,
            "Gauss-Legendre order " + std::to_string(order) + " outside [2, 64]");
    return detail::gauss_table()[static_cast<std::size_t>(order)];
}

struct AdaptiveOptions {
    int max_depth = 50;
    /// The interval is split into this many equal panels before refinement;
    /// oscillatory integrands should start with about one panel per period.
    std::size_t initial_panels = 1;
    std::size_t max_panels = 200000;
    int low_order = 10;
    int high_order = 20;
};

/// Globally adaptive bisection. Each panel is integrated with two Gauss
/// orders and their difference is the panel error; the worst panel is split
/// until the summed estimate is at most tol.
///
/// A panel that needs more than max_depth bisections raises MaxDepth: that is
/// the signature of an interior singularity the caller has to transform away.
/// When tol lies below what rounding allows, the result is returned with
/// converged = false instead.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tol, const AdaptiveOptions& opt = {})
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw numeric_error(error_kind::domain_error, "integrate_adaptive needs finite a < b");
    const GaussRule& lo_rule = gauss_legendre(opt.low_order);
    const GaussRule& hi_rule = gauss_legendre(opt.high_order);

    struct panel {
        double a, b, value, err;
        int depth;
    };
    auto evaluate = [&](double pa, double pb, int depth) {
        const double hi = detail::gauss_panel(hi_rule, f, pa, pb);
        const double lo = detail::gauss_panel(lo_rule, f, pa, pb);
        return panel{pa, pb, hi, std::abs(hi - lo), depth};
    };
    auto worse = [](const panel& x, const panel& y) {
        if (x.err != y.err)
            return x.err < y.err;
        return x.a > y.a;
    };
    std::priority_queue<panel, std::vector<panel>, decltype(worse)> queue(worse);

    const std::size_t n0 = std::max<std::size_t>(1, opt.initial_panels);
    const double width = (b - a) / static_cast<double>(n0);
    double total_err = 0.0;
    double total_abs = 0.0;
    for (std::size_t i = 0; i < n0; ++i) {
        const double pa = a + width * static_cast<double>(i);
        const double pb = i + 1 == n0 ? b : a + width * static_cast<double>(i + 1);
        panel p = evaluate(pa, pb, 0);
        total_err += p.err;
        total_abs += std::abs(p.value);
        queue.push(p);
    }

    bool converged = total_err <= tol;
    std::size_t since_resum = 0;
    while (!converged) {
        const double floor = 64.0 * DBL_EPSILON * total_abs;
        if (total_err <= floor)
            break;
        panel worst = queue.top();
        if (worst.depth >= opt.max_depth)
            throw numeric_error(error_kind::max_depth,
                "panel near x=" + std::to_string(0.5 * (worst.a + worst.b)) + " needed more than "
                    + std::to_string(opt.max_depth) + " bisections");
        if (queue.size() >= opt.max_panels)
            throw numeric_error(error_kind::max_depth, "adaptive refinement exceeded its panel budget");
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        panel left = evaluate(worst.a, mid, worst.depth + 1);
        panel right = evaluate(mid, worst.b, worst.depth + 1);
        total_err += left.err + right.err - worst.err;
        total_abs += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
        queue.push(left);
        queue.push(right);
        // Running sums drift; recompute them now and then.
        if (++since_resum >= 256 || total_err <= tol) {
            since_resum = 0;
            auto copy = queue;
            total_err = 0.0;
            total_abs = 0.0;
            while (!copy.empty()) {
                total_err += copy.top().err;
                total_abs += std::abs(copy.top().value);
                copy.pop();
            }
        }
        converged = total_err <= tol;
    }

    std::vector<panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const panel& x, const panel& y) { return x.a < y.a; });
    QuadratureResult r;
    double err = 0.0;
    for (const auto& p : panels) {
        r.value += p.value;
        err += p.err;
    }
    r.abs_error_estimate = err;
    r.converged = err <= tol;
    r.segments_used = panels.size();
    return r;
}

/// int_0^1 g(u) / sqrt(1-u^2) du, computed as int_0^{pi/2} g(cos th) dth so the
/// endpoint singularity never reaches the quadrature.
template <class G>
QuadratureResult integrate_cheb_weight(G&& g, double tol, const AdaptiveOptions& opt = {})
{
    return integrate_adaptive([&g](double th) { return g(std::cos(th)); }, 0.0, std::numbers::pi / 2.0, tol, opt);
}

} // namespace lommel
