#pragma once

// Run configuration: INI-style "key = value" lines under [section] headers.
// '#' and ';' start comments. Grid entries take comma lists and inclusive
// ranges start:stop:step, e.g. "n = 0:5:1" or "a = 0.5, 1, 2".

#include "lommel/identities.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace lommel {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    double series_eps = 1e-16;
    std::size_t max_terms = 500;
    double integer_eps = 1e-9;
    double quad_tol_finite = 1e-10;
    double quad_tol_osc = 1e-6;
    std::size_t max_segments = 120;
    GridSpec grids;
    std::string output_dir = "out";
    bool record_timing = false;
    unsigned threads = 0;

    bool operator==(const Config&) const = default;

    Settings settings() const
    {
        Settings s;
        s.series.series_eps = series_eps;
        s.series.max_terms = max_terms;
        s.series.integer_eps = integer_eps;
        s.quad_tol_finite = quad_tol_finite;
        s.quad_tol_osc = quad_tol_osc;
        s.max_segments = max_segments;
        s.record_timing = record_timing;
        s.threads = threads;
        return s;
    }
};

inline constexpr const char* output_dir_env = "LOMMEL_OUTPUT_DIR";

namespace detail {

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw config_error("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw config_error("not a finite number: '" + s + "'");
    return v;
}

// Shortest decimal that reads back to the same double.
inline std::string shortest(double v)
{
    char buf[40];
    for (int p = 1; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

} // namespace detail

/// Comma list of values and inclusive ranges. A range start:stop:step
/// yields start + k step for k = 0..round((stop-start)/step), so stop is
/// included when the last point lands within step/2 of it.
inline std::vector<double> parse_value_list(std::string_view text)
{
    std::vector<double> out;
    std::string item;
    std::istringstream is{std::string(text)};
    while (std::getline(is, item, ',')) {
        item = detail::trim(item);
        if (item.empty())
            throw config_error("empty entry in list '" + std::string(text) + "'");
        const auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(detail::parse_real(item));
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos || item.find(':', c2 + 1) != std::string::npos)
            throw config_error("range must be start:stop:step, got '" + item + "'");
        const double start = detail::parse_real(detail::trim(item.substr(0, c1)));
        const double stop = detail::parse_real(detail::trim(item.substr(c1 + 1, c2 - c1 - 1)));
        const double step = detail::parse_real(detail::trim(item.substr(c2 + 1)));
        if (!(step > 0.0) || stop < start)
            throw config_error("range '" + item + "' needs step > 0 and stop >= start");
        const double count = std::floor((stop - start) / step + 0.5);
        if (count > 1e6)
            throw config_error("range '" + item + "' has too many points");
        for (long k = 0; k <= static_cast<long>(count); ++k)
            out.push_back(start + static_cast<double>(k) * step);
    }
    if (out.empty())
        throw config_error("empty list");
    return out;
}

inline std::vector<int> parse_int_list(std::string_view text)
{
    std::vector<int> out;
    for (double v : parse_value_list(text)) {
        if (v != std::round(v) || std::abs(v) > 1e9)
            throw config_error("expected integers in '" + std::string(text) + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

namespace detail {

inline std::size_t parse_count(const std::string& key, const std::string& v)
{
    const double d = parse_real(v);
    if (d < 1.0 || d != std::round(d) || d > 1e9)
        throw config_error(key + " must be an integer >= 1");
    return static_cast<std::size_t>(d);
}

inline double parse_positive(const std::string& key, const std::string& v)
{
    const double d = parse_real(v);
    if (!(d > 0.0))
        throw config_error(key + " must be > 0");
    return d;
}

inline bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw config_error(key + " must be true or false");
}

template <class T>
std::string join(const std::vector<T>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        if constexpr (std::is_same_v<T, int>)
            s += std::to_string(v[i]);
        else
            s += shortest(v[i]);
    }
    return s;
}

} // namespace detail

inline Config parse_config(std::istream& in)
{
    Config c;
    std::string section;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto cut = raw.find_first_of("#;");
        const std::string line = detail::trim(cut == std::string::npos ? raw : raw.substr(0, cut));
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(where + "unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(where + "expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        try {
            if (section == "series") {
                if (key == "series_eps") c.series_eps = detail::parse_positive(key, val);
                else if (key == "max_terms") c.max_terms = detail::parse_count(key, val);
                else if (key == "integer_eps") c.integer_eps = detail::parse_positive(key, val);
                else throw config_error("unknown key '" + key + "' in [series]");
            } else if (section == "quadrature") {
                if (key == "quad_tol_finite") c.quad_tol_finite = detail::parse_positive(key, val);
                else if (key == "quad_tol_osc") c.quad_tol_osc = detail::parse_positive(key, val);
                else if (key == "max_segments") c.max_segments = detail::parse_count(key, val);
                else throw config_error("unknown key '" + key + "' in [quadrature]");
            } else if (section == "grids") {
                GridSpec& g = c.grids;
                if (key == "a") g.a = parse_value_list(val);
                else if (key == "b") g.b = parse_value_list(val);
                else if (key == "n") g.n = parse_int_list(val);
                else if (key == "t") g.t = parse_value_list(val);
                else if (key == "x") g.x = parse_value_list(val);
                else if (key == "w") g.w = parse_value_list(val);
                else if (key == "K") g.K = parse_int_list(val);
                else if (key == "u") g.u = parse_value_list(val);
                else if (key == "y") g.y = parse_value_list(val);
                else if (key == "m") g.m = parse_value_list(val);
                else if (key == "nu") g.nu = parse_value_list(val);
                else throw config_error("unknown grid '" + key + "'");
            } else if (section == "output") {
                if (key == "output_dir") {
                    if (val.empty())
                        throw config_error("output_dir is empty");
                    c.output_dir = val;
                } else if (key == "record_timing") c.record_timing = detail::parse_bool(key, val);
                else if (key == "threads") {
                    const double d = detail::parse_real(val);
                    if (d < 0.0 || d != std::round(d) || d > 4096.0)
                        throw config_error("threads must be an integer in [0, 4096]");
                    c.threads = static_cast<unsigned>(d);
                } else throw config_error("unknown key '" + key + "' in [output]");
            } else {
                throw config_error("key '" + key + "' outside a known section");
            }
        } catch (const config_error& e) {
            throw config_error(where + e.what());
        }
    }
    return c;
}

inline std::string serialize_config(const Config& c)
{
    std::ostringstream os;
    os << "[series]\n"
       << "series_eps = " << detail::shortest(c.series_eps) << '\n'
       << "max_terms = " << c.max_terms << '\n'
       << "integer_eps = " << detail::shortest(c.integer_eps) << "\n\n"
       << "[quadrature]\n"
       << "quad_tol_finite = " << detail::shortest(c.quad_tol_finite) << '\n'
       << "quad_tol_osc = " << detail::shortest(c.quad_tol_osc) << '\n'
       << "max_segments = " << c.max_segments << "\n\n"
       << "[grids]\n"
       << "a = " << detail::join(c.grids.a) << '\n'
       << "b = " << detail::join(c.grids.b) << '\n'
       << "n = " << detail::join(c.grids.n) << '\n'
       << "t = " << detail::join(c.grids.t) << '\n'
       << "x = " << detail::join(c.grids.x) << '\n'
       << "w = " << detail::join(c.grids.w) << '\n'
       << "K = " << detail::join(c.grids.K) << '\n'
       << "u = " << detail::join(c.grids.u) << '\n'
       << "y = " << detail::join(c.grids.y) << '\n'
       << "m = " << detail::join(c.grids.m) << '\n'
       << "nu = " << detail::join(c.grids.nu) << "\n\n"
       << "[output]\n"
       << "output_dir = " << c.output_dir << '\n'
       << "record_timing = " << (c.record_timing ? "true" : "false") << '\n'
       << "threads = " << c.threads << '\n';
    return os.str();
}

/// Applies the output-directory environment override.
inline void apply_environment(Config& c)
{
    if (const char* dir = std::getenv(output_dir_env); dir && *dir)
        c.output_dir = dir;
}

} // namespace lommel
