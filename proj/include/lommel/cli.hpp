#pragma once

// Command-line front end: eval / verify / scan.
//
// Exit codes: 0 success, 1 a verify run produced a fail verdict, 2 bad
// arguments (including poles and degenerate orders in eval), 3 configuration
// or output-directory errors.

#include "lommel/chebyshev_route.hpp"
#include "lommel/config.hpp"
#include "lommel/conventions.hpp"
#include "lommel/error.hpp"
#include "lommel/identities.hpp"
#include "lommel/report.hpp"
#include "lommel/specfun.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace lommel {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_config = 3;

namespace cli_detail {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Config load_config(const std::string& path)
{
    Config c;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in)
            throw config_error("cannot open config file '" + path + "'");
        c = parse_config(in);
    }
    apply_environment(c);
    return c;
}

inline std::vector<double> values(const std::string& flag, const std::string& text)
{
    try {
        return parse_value_list(text);
    } catch (const config_error& e) {
        throw usage_error("--" + flag + ": " + e.what());
    }
}

inline std::vector<int> ints(const std::string& flag, const std::string& text)
{
    try {
        return parse_int_list(text);
    } catch (const config_error& e) {
        throw usage_error("--" + flag + ": " + e.what());
    }
}

inline std::string cell(const char* f, double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct EvalArgs {
    std::string function;
    std::string mu, nu, z, n, x, t, parity = "even";
    std::string csv;
};

struct EvalRow {
    std::vector<std::string> inputs;
    EvalResult result;
};

inline std::vector<EvalRow> run_eval(const EvalArgs& a, std::vector<std::string>& columns, const SeriesOptions& opt)
{
    auto need = [](const std::string& v, const char* flag) {
        if (v.empty())
            throw usage_error(std::string("missing --") + flag);
        return v;
    };
    std::vector<EvalRow> rows;
    const std::string& f = a.function;
    if (f == "lommel_s") {
        columns = {"mu", "nu", "z"};
        for (double mu : values("mu", need(a.mu, "mu")))
            for (double nu : values("nu", need(a.nu, "nu")))
                for (double z : values("z", need(a.z, "z")))
                    rows.push_back({{cell("%.15g", mu), cell("%.15g", nu), cell("%.15g", z)}, lommel_s({mu, nu, z}, opt)});
    } else if (f == "struve_h0" || f == "bessel_j0") {
        columns = {"z"};
        for (double z : values("z", need(a.z, "z")))
            rows.push_back({{cell("%.15g", z)}, f == "struve_h0" ? struve_h0(z, opt) : bessel_j0(z, opt)});
    } else if (f == "chebyshev_t" || f == "chebyshev_u") {
        columns = {"n", "x"};
        for (int n : ints("n", need(a.n, "n"))) {
            if (n < 0)
                throw usage_error("--n must be >= 0");
            for (double x : values("x", need(a.x, "x"))) {
                const auto un = static_cast<unsigned>(n);
                const double v = f == "chebyshev_t" ? chebyshev_t(un, x) : chebyshev_u(un, x);
                rows.push_back({{std::to_string(n), cell("%.15g", x)}, {v, 0.0, 0}});
            }
        }
    } else if (f == "lommel_cheb") {
        if (a.parity != "even" && a.parity != "odd")
            throw usage_error("--parity must be even or odd");
        columns = {"parity", "n", "t"};
        const parity par = a.parity == "even" ? parity::even : parity::odd;
        for (int n : ints("n", need(a.n, "n"))) {
            if (n < 0)
                throw usage_error("--n must be >= 0");
            for (double t : values("t", need(a.t, "t")))
                rows.push_back({{a.parity, std::to_string(n), cell("%.15g", t)},
                    lommel_s_via_chebyshev(par, {static_cast<unsigned>(n)}, t)});
        }
    } else {
        throw usage_error("unknown function '" + f
            + "' (expected lommel_s, struve_h0, bessel_j0, chebyshev_t, chebyshev_u, lommel_cheb)");
    }
    return rows;
}

inline void print_eval(std::ostream& out, const std::vector<std::string>& columns, const std::vector<EvalRow>& rows)
{
    char buf[96];
    for (const auto& c : columns) {
        std::snprintf(buf, sizeof buf, "%12s ", c.c_str());
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%25s %14s", "value", "error_estimate");
    out << buf << '\n';
    for (const EvalRow& r : rows) {
        std::string l;
        for (const auto& in : r.inputs) {
            std::snprintf(buf, sizeof buf, "%12s ", in.c_str());
            l += buf;
        }
        std::snprintf(buf, sizeof buf, "%25.17g %14.3e", r.result.value, r.result.abs_error_estimate);
        out << l << buf << '\n';
    }
}

inline void write_eval_csv(std::ostream& os, const std::vector<std::string>& columns, const std::vector<EvalRow>& rows)
{
    for (const auto& c : columns)
        os << c << ',';
    os << "value,error_estimate\n";
    for (const EvalRow& r : rows) {
        for (const auto& in : r.inputs)
            os << in << ',';
        os << cell("%.17g", r.result.value) << ',' << cell("%.17g", r.result.abs_error_estimate) << '\n';
    }
}

struct GridArgs {
    std::string a, b, n, t, w, x, m, K, u, y, nu;
};

inline void apply_grid_overrides(GridSpec& g, const GridArgs& o)
{
    if (!o.a.empty()) g.a = values("a", o.a);
    if (!o.b.empty()) g.b = values("b", o.b);
    if (!o.n.empty()) g.n = ints("n", o.n);
    if (!o.t.empty()) g.t = values("t", o.t);
    if (!o.w.empty()) g.w = values("w", o.w);
    if (!o.K.empty()) g.K = ints("K", o.K);
    if (!o.m.empty()) g.m = values("m", o.m);
    if (!o.x.empty()) {
        // The x column carries u, y and nu as well, whichever the identity uses.
        g.x = g.u = g.y = g.nu = values("x", o.x);
    }
    if (!o.u.empty()) g.u = values("u", o.u);
    if (!o.y.empty()) g.y = values("y", o.y);
    if (!o.nu.empty()) g.nu = values("nu", o.nu);
}

inline void print_summary(std::ostream& out, const std::vector<ReportRecord>& rs)
{
    std::vector<IdentityId> order;
    std::map<IdentityId, std::vector<const ReportRecord*>> by_id;
    for (const ReportRecord& r : rs) {
        auto& v = by_id[r.identity_case.id];
        if (v.empty())
            order.push_back(r.identity_case.id);
        v.push_back(&r);
    }
    for (IdentityId id : order) {
        std::size_t pass = 0, fail = 0, unres = 0;
        double worst = 0.0;
        std::set<std::string> forms;
        for (const ReportRecord* r : by_id[id]) {
            pass += r->verdict == Verdict::pass;
            fail += r->verdict == Verdict::fail;
            unres += r->verdict == Verdict::unresolved;
            if (std::isfinite(r->abs_residual))
                worst = std::max(worst, r->abs_residual);
            if (!r->form.empty())
                forms.insert(r->form);
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-12s %-6s pass %3zu  fail %3zu  unresolved %3zu  max_abs_residual %.3e",
            std::string(suite_of(id)).c_str(), std::string(to_string(id)).c_str(), pass, fail, unres, worst);
        out << buf;
        if (!forms.empty()) {
            out << "  form";
            for (const auto& f : forms)
                out << ' ' << f;
        }
        out << '\n';
    }
    const VerdictCounts c = count_verdicts(rs);
    out << "total: " << rs.size() << " cases, " << c.pass << " pass, " << c.fail << " fail, " << c.unresolved
        << " unresolved\n";
}

inline void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw config_error("cannot write '" + p.string() + "'");
    os << text;
    if (!os)
        throw config_error("write to '" + p.string() + "' failed");
}

inline std::filesystem::path prepare_output_dir(const std::string& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw config_error("cannot create output directory '" + dir + "': " + ec.message());
    return dir;
}

} // namespace cli_detail

/// Entry point of the lommel_cli tool; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    using namespace cli_detail;
    CLI::App app{"Lommel function evaluation and identity verification", "lommel_cli"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    double tol = 0.0;

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "evaluate a function over parameter lists or ranges");
    eval->add_option("function", ea.function,
            "lommel_s | struve_h0 | bessel_j0 | chebyshev_t | chebyshev_u | lommel_cheb")
        ->required();
    eval->add_option("--mu", ea.mu, "order mu");
    eval->add_option("--nu", ea.nu, "order nu");
    eval->add_option("--z", ea.z, "argument z");
    eval->add_option("--n", ea.n, "degree index n");
    eval->add_option("--x", ea.x, "Chebyshev argument x");
    eval->add_option("--t", ea.t, "argument t of the Chebyshev-integral route");
    eval->add_option("--parity", ea.parity, "even | odd (lommel_cheb)");
    eval->add_option("--csv", ea.csv, "also write the table as CSV to this file");
    eval->add_option("--config", config_path, "configuration file");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
    verify->add_option("suite", suite, "theorem1 | theorem2 | recurrences | sums | conventions | all")->required();
    verify->add_option("--config", config_path, "configuration file");
    verify->add_option("--out", out_dir, "output directory (overrides config and environment)");
    verify->add_option("--tol", tol, "absolute tolerance for every case");

    std::string identity;
    std::string scan_csv;
    GridArgs ga;
    auto* scan = app.add_subcommand("scan", "residuals of one identity over a grid, as CSV");
    scan->add_option("identity", identity, "identity id, e.g. T1b, T1ap, E17")->required();
    scan->add_option("--config", config_path, "configuration file");
    scan->add_option("--csv", scan_csv, "write CSV to this file instead of standard output");
    scan->add_option("--tol", tol, "absolute tolerance for every case");
    for (auto [name, target] : std::initializer_list<std::pair<const char*, std::string*>>{{"--a", &ga.a},
             {"--b", &ga.b}, {"--n", &ga.n}, {"--t", &ga.t}, {"--w", &ga.w}, {"--x", &ga.x}, {"--m", &ga.m},
             {"--K", &ga.K}, {"--u", &ga.u}, {"--y", &ga.y}, {"--nu", &ga.nu}})
        scan->add_option(name, *target, "grid override: list or start:stop:step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (tol < 0.0) {
        err << "error: --tol must be >= 0\n";
        return exit_usage;
    }

    try {
        Config cfg = load_config(config_path);
        Settings settings = cfg.settings();

        if (*eval) {
            std::vector<std::string> columns;
            const auto rows = run_eval(ea, columns, settings.series);
            print_eval(out, columns, rows);
            if (!ea.csv.empty()) {
                std::ostringstream os;
                write_eval_csv(os, columns, rows);
                write_file(ea.csv, os.str());
            }
            return exit_ok;
        }

        if (*scan) {
            const auto id = parse_identity(identity);
            if (!id)
                throw usage_error("unknown identity '" + identity + "'");
            GridSpec g = cfg.grids;
            apply_grid_overrides(g, ga);
            auto cases = build_cases(*id, g);
            for (auto& c : cases)
                c.tolerance = tol;
            const auto records = run_grid(cases, settings);
            std::ostringstream os;
            write_csv(os, records);
            if (scan_csv.empty())
                out << os.str();
            else
                write_file(scan_csv, os.str());
            return exit_ok;
        }

        static const std::set<std::string> suites{"theorem1", "theorem2", "recurrences", "sums", "conventions", "all"};
        if (!suites.count(suite))
            throw usage_error("unknown suite '" + suite + "'");
        if (!out_dir.empty())
            cfg.output_dir = out_dir;
        const auto dir = prepare_output_dir(cfg.output_dir);

        std::vector<ReportRecord> records;
        ConventionsRecord pinned;
        if (suite == "conventions" || suite == "all") {
            const ConventionsReport rep = resolve_conventions(cfg.grids, settings);
            write_file(dir / "conventions.txt", serialize_conventions(rep));
            out << serialize_conventions(rep);
            pinned = rep.record;
            if (suite == "conventions")
                records = rep.records;
        } else if (std::ifstream in(dir / "conventions.txt"); in) {
            try {
                pinned = parse_conventions(in);
            } catch (const numeric_error& e) {
                throw config_error(std::string("conventions record: ") + e.what());
            }
        }
        settings.conventions = pinned.empty() ? nullptr : &pinned;
        if (suite != "conventions") {
            auto cases = build_suite(suite, cfg.grids);
            for (auto& c : cases)
                c.tolerance = tol;
            records = run_grid(cases, settings);
        }

        nlohmann::ordered_json doc;
        doc["suite"] = suite;
        doc["records"] = to_json(records);
        write_file(dir / ("report_" + suite + ".json"), doc.dump(2) + "\n");
        print_summary(out, records);
        return count_verdicts(records).fail ? exit_failed : exit_ok;
    } catch (const config_error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace lommel
