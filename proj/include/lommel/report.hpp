#pragma once

#include "lommel/identities.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace lommel {

inline constexpr const char* csv_header =
    "suite,variant,a,b,n,t,w,x,m,K,lhs,rhs,abs_residual,rel_residual,lhs_err,rhs_err,wall_ms,verdict";

namespace detail {

inline std::string fmt(const char* f, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline std::string param_cell(const std::optional<double>& v) { return v ? fmt("%.15g", *v) : std::string(); }
inline std::string param_cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

} // namespace detail

inline std::string csv_row(const ReportRecord& r)
{
    const CaseParams& p = r.identity_case.params;
    const IdentityId id = r.identity_case.id;
    std::string row;
    auto cell = [&row](const std::string& s) {
        if (!row.empty())
            row += ',';
        row += s;
    };
    cell(std::string(suite_of(id)));
    cell(std::string(to_string(id)));
    cell(detail::param_cell(p.a));
    cell(detail::param_cell(p.b));
    cell(detail::param_cell(p.n));
    cell(detail::param_cell(p.t));
    cell(detail::param_cell(p.w));
    cell(detail::param_cell(p.x));
    cell(detail::param_cell(p.m));
    cell(detail::param_cell(p.K));
    for (double v : {r.lhs, r.rhs, r.abs_residual, r.rel_residual, r.lhs_error_estimate, r.rhs_error_estimate})
        cell(detail::fmt("%.17g", v));
    cell(r.wall_ms ? detail::fmt("%.3f", *r.wall_ms) : std::string());
    cell(std::string(to_string(r.verdict)));
    return row;
}

inline void write_csv(std::ostream& os, const std::vector<ReportRecord>& rs)
{
    os << csv_header << '\n';
    for (const ReportRecord& r : rs)
        os << csv_row(r) << '\n';
}

inline nlohmann::ordered_json to_json(const ReportRecord& r)
{
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    const CaseParams& p = r.identity_case.params;
    auto put = [&params](const char* k, const auto& v) {
        if (v)
            params[k] = *v;
    };
    put("a", p.a);
    put("b", p.b);
    put("n", p.n);
    put("t", p.t);
    put("w", p.w);
    put("x", p.x);
    put("m", p.m);
    put("K", p.K);

    nlohmann::ordered_json j;
    j["identity_id"] = std::string(to_string(r.identity_case.id));
    j["suite"] = std::string(suite_of(r.identity_case.id));
    j["params"] = params;
    j["tolerance"] = tolerance_of(r.identity_case);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["lhs_error_estimate"] = r.lhs_error_estimate;
    j["rhs_error_estimate"] = r.rhs_error_estimate;
    j["wall_ms"] = r.wall_ms ? nlohmann::ordered_json(*r.wall_ms) : nlohmann::ordered_json(nullptr);
    j["verdict"] = std::string(to_string(r.verdict));
    j["form"] = r.form;
    nlohmann::ordered_json forms = nlohmann::ordered_json::array();
    for (const FormResult& f : r.forms)
        forms.push_back({{"name", f.name}, {"rhs", f.rhs}, {"abs_residual", f.abs_residual}, {"matches", f.matches}});
    j["forms"] = forms;
    j["note"] = r.note;
    return j;
}

inline nlohmann::ordered_json to_json(const std::vector<ReportRecord>& rs)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ReportRecord& r : rs)
        arr.push_back(to_json(r));
    return arr;
}

struct VerdictCounts {
    std::size_t pass = 0, fail = 0, unresolved = 0;
};

inline VerdictCounts count_verdicts(const std::vector<ReportRecord>& rs)
{
    VerdictCounts c;
    for (const ReportRecord& r : rs) {
        switch (r.verdict) {
        case Verdict::pass: ++c.pass; break;
        case Verdict::fail: ++c.fail; break;
        case Verdict::unresolved: ++c.unresolved; break;
        }
    }
    return c;
}

} // namespace lommel
