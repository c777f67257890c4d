#pragma once

// Brute-force reference values. Nothing here calls the series evaluators or
// the adaptive/oscillatory quadrature; the only tool is a fixed composite
// Simpson rule on smooth integrands over [0, pi/2].

#include "lommel/error.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace lommel::oracle {

inline constexpr std::size_t default_panels = 512;

struct OracleResult {
    double value = 0.0;
    std::string method;
    std::size_t grid_points = 0;
};

/// Composite Simpson rule with an even number of panels.
template <class F>
OracleResult simpson(F&& f, double a, double b, std::size_t panels)
{
    if (panels < 2 || panels % 2 != 0)
        throw numeric_error(error_kind::domain_error, "Simpson needs an even panel count >= 2");
    const double h = (b - a) / static_cast<double>(panels);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < panels; ++i) {
        const double v = f(a + h * static_cast<double>(i));
        (i % 2 == 1 ? odd : even) += v;
    }
    const double value = h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
    return {value, "simpson", panels + 1};
}

/// |S(2N) - S(N)|, the change under panel doubling.
template <class F>
double simpson_doubling_change(F&& f, double a, double b, std::size_t panels)
{
    return std::abs(simpson(f, a, b, 2 * panels).value - simpson(f, a, b, panels).value);
}

/// -pi int_0^{pi/2} sin(a cos x) cos(b cos x) dx.
inline OracleResult lhs_parseval(double a, double b, std::size_t panels = default_panels)
{
    auto r = simpson([a, b](double x) { return std::sin(a * std::cos(x)) * std::cos(b * std::cos(x)); }, 0.0,
        std::numbers::pi / 2.0, panels);
    r.value *= -std::numbers::pi;
    r.method = "simpson:parseval";
    return r;
}

enum class finite_kind { sine, cosine };

/// int_0^1 trig(arg u) cos(y arccos u) / sqrt(1-u^2) du after u = cos th, i.e.
/// int_0^{pi/2} trig(arg cos th) cos(y th) dth, for any real order y.
/// sine pairs with cos(pi y/2) s_{0,y}(arg); cosine with -y sin(pi y/2) s_{-1,y}(arg).
inline OracleResult lommel_finite(finite_kind kind, double y, double arg, std::size_t panels = default_panels)
{
    auto r = kind == finite_kind::sine
        ? simpson([y, arg](double th) { return std::sin(arg * std::cos(th)) * std::cos(y * th); }, 0.0,
              std::numbers::pi / 2.0, panels)
        : simpson([y, arg](double th) { return std::cos(arg * std::cos(th)) * std::cos(y * th); }, 0.0,
              std::numbers::pi / 2.0, panels);
    r.method = kind == finite_kind::sine ? "simpson:sine" : "simpson:cosine";
    return r;
}

/// H0(z) = (2/pi) int_0^{pi/2} sin(z cos th) dth.
inline OracleResult struve_h0(double z, std::size_t panels = default_panels)
{
    auto r = simpson([z](double th) { return std::sin(z * std::cos(th)); }, 0.0, std::numbers::pi / 2.0, panels);
    r.value *= 2.0 / std::numbers::pi;
    r.method = "simpson:struve";
    return r;
}

/// J0 by its ascending series in extended precision, summed until terms
/// drop below 1e-30 of the running sum.
inline OracleResult bessel_j0_series(double z)
{
    const long double q = static_cast<long double>(z) * z / 4.0L;
    long double t = 1.0L;
    long double sum = 1.0L;
    std::size_t k = 0;
    while (k < 2000) {
        ++k;
        t *= -q / (static_cast<long double>(k) * k);
        sum += t;
        if (std::abs(t) <= 1e-30L * std::abs(sum) && q < static_cast<long double>(k) * k)
            break;
    }
    return {static_cast<double>(sum), "series:long-double", k + 1};
}

} // namespace lommel::oracle
