#pragma once

#include "lommel/error.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lommel {

/// Wynn's epsilon algorithm over a sequence of partial sums.
///
/// Builds the table eps_{k+1}^{(n)} = eps_{k-1}^{(n+1)} + 1/(eps_k^{(n+1)} - eps_k^{(n)})
/// and returns the entry of the highest even column that uses the last
/// element of the sequence. A vanishing difference means the column below
/// has already converged; the best value found so far is returned then.
inline double wynn_epsilon(std::span<const double> seq)
{
    if (seq.empty())
        return 0.0;
    std::vector<double> prev(seq.size() + 1, 0.0); // column k-1
    std::vector<double> cur(seq.begin(), seq.end()); // column k
    double best = seq.back();
    for (std::size_t col = 1; cur.size() >= 2; ++col) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0 || !std::isfinite(diff))
                return best;
            next[i] = prev[i + 1] + 1.0 / diff;
            if (!std::isfinite(next[i]))
                return best;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (col % 2 == 0)
            best = cur.back();
    }
    return best;
}

/// Tail integral int_X^inf c/x^p dx = c X^{1-p} / (p-1), with c fitted by
/// least squares to samples (x, f(x)) of the oscillation-averaged envelope.
///
/// BadFit when the relative rms misfit of c/x^p exceeds 20%.
inline double tail_power_estimate(std::span<const std::pair<double, double>> samples, double p, double X)
{
    if (!(X > 0.0))
        throw numeric_error(error_kind::domain_error, "tail start X must be positive");
    if (!(p > 1.0))
        throw numeric_error(error_kind::domain_error, "tail model needs decay order p > 1");
    if (samples.empty())
        throw numeric_error(error_kind::domain_error, "tail fit needs at least one sample");
    double num = 0.0;
    double den = 0.0;
    double norm = 0.0;
    for (const auto& [x, f] : samples) {
        const double basis = std::pow(x, -p);
        num += basis * f;
        den += basis * basis;
        norm += f * f;
    }
    const double c = num / den;
    if (norm == 0.0)
        return 0.0;
    double misfit = 0.0;
    for (const auto& [x, f] : samples) {
        const double r = f - c * std::pow(x, -p);
        misfit += r * r;
    }
    if (std::sqrt(misfit / norm) > 0.2)
        throw numeric_error(error_kind::bad_fit, "c/x^p envelope misfit above 20% for p=" + std::to_string(p));
    return c * std::pow(X, 1.0 - p) / (p - 1.0);
}

} // namespace lommel
