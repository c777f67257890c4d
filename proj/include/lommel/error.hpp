#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lommel {

enum class error_kind {
    degenerate_parameter,
    pole_at_order,
    no_convergence,
    invalid_order,
    zero_order,
    unsupported_order,
    max_depth,
    spec_mismatch,
    bad_fit,
    domain_error,
};

constexpr std::string_view to_string(error_kind k) noexcept
{
    switch (k) {
    case error_kind::degenerate_parameter: return "DegenerateParameter";
    case error_kind::pole_at_order: return "PoleAtOrder";
    case error_kind::no_convergence: return "NoConvergence";
    case error_kind::invalid_order: return "InvalidOrder";
    case error_kind::zero_order: return "ZeroOrder";
    case error_kind::unsupported_order: return "UnsupportedOrder";
    case error_kind::max_depth: return "MaxDepth";
    case error_kind::spec_mismatch: return "SpecMismatch";
    case error_kind::bad_fit: return "BadFit";
    case error_kind::domain_error: return "DomainError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above; the
/// message names the violated condition.
class numeric_error : public std::runtime_error {
public:
    numeric_error(error_kind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    [[nodiscard]] error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

} // namespace lommel
