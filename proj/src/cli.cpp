#include "levinq/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "levinq/errors.hpp"
#include "levinq/registry.hpp"

namespace levinq {

namespace {

constexpr double kOracleAttachMaxW = 1e3;

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <typename T>
std::string opt_field(const std::optional<T>& v)
{
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>)
        return format_double(*v);
    else
        return std::to_string(*v);
}

Method to_levin_method(CliMethod m)
{
    switch (m) {
    case CliMethod::classic: return Method::classic;
    case CliMethod::log_linear: return Method::log_linear;
    case CliMethod::log_general: return Method::log_general;
    case CliMethod::oracle: break;
    }
    throw std::logic_error("oracle has no Levin method");
}

struct Evaluation {
    Complex value;
    std::optional<long> rank_used;
    std::optional<double> residual_inf;
    std::optional<double> est_error;
};

Evaluation evaluate(const ProblemEntry& e, double w, int n, CliMethod method, const RunOptions& opts)
{
    Evaluation ev{};
    if (method == CliMethod::oracle) {
        const ReferenceValue rv = e.oracle_reference(w, opts.tol);
        ev.value = rv.value;
        ev.est_error = rv.est_error;
        return ev;
    }
    long rank = -1;
    double resid = 0.0;
    for (std::size_t k = 0; k < e.parts.size(); ++k) {
        const QuadratureResult r = integrate(e.part_problem(k, w), to_levin_method(method), n, opts.grid, opts.rel_tol);
        ev.value += r.value;
        rank = rank < 0 ? static_cast<long>(r.rank_used) : std::min(rank, static_cast<long>(r.rank_used));
        resid = std::max(resid, r.residual_inf);
    }
    ev.rank_used = rank;
    ev.residual_inf = resid;
    return ev;
}

void attach_errors(CsvRecord& rec, const ReferenceValue& ref)
{
    if (!rec.value) return;
    const double err = std::abs(*rec.value - ref.value);
    rec.abs_err = err;
    const double mag = std::abs(ref.value);
    if (mag > 0.0) rec.rel_err = err / mag;
}

void append_note(CsvRecord& rec, const std::string& s)
{
    if (!rec.note.empty()) rec.note += "; ";
    rec.note += s;
}

double scaled_error(double abs_err, double w)
{
    const double aw = std::abs(w);
    return abs_err * aw * aw / (1.0 + std::log(aw));
}

// Computes one record with an explicitly supplied reference.
CsvRecord record_with_reference(const ProblemEntry& e, double w, int n, CliMethod method,
                                const RunOptions& opts, const std::optional<ReferenceValue>& ref)
{
    CsvRecord rec;
    rec.method = to_string(method);
    rec.problem = e.name;
    rec.w = w;
    rec.n = n;
    const auto t0 = std::chrono::steady_clock::now();
    const Evaluation ev = evaluate(e, w, n, method, opts);
    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rec.value = ev.value;
    rec.rank_used = ev.rank_used;
    rec.residual_inf = ev.residual_inf;
    if (ev.est_error) append_note(rec, "est_error=" + format_double(*ev.est_error));
    if (ref) {
        attach_errors(rec, *ref);
        append_note(rec, std::string("ref=") + to_string(ref->source));
    }
    return rec;
}

std::optional<ReferenceValue> default_reference(const ProblemEntry& e, double w, CliMethod method,
                                                const RunOptions& opts)
{
    if (auto exact = e.exact_reference(w)) return exact;
    if (method != CliMethod::oracle && std::abs(w) <= kOracleAttachMaxW) return e.oracle_reference(w, opts.tol);
    return std::nullopt;
}

}  // namespace

std::optional<CliMethod> parse_method(std::string_view name)
{
    if (name == "classic") return CliMethod::classic;
    if (name == "log_linear") return CliMethod::log_linear;
    if (name == "log_general") return CliMethod::log_general;
    if (name == "oracle") return CliMethod::oracle;
    return std::nullopt;
}

const char* to_string(CliMethod m)
{
    switch (m) {
    case CliMethod::classic: return "classic";
    case CliMethod::log_linear: return "log_linear";
    case CliMethod::log_general: return "log_general";
    case CliMethod::oracle: return "oracle";
    }
    return "?";
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<CsvRecord>& rows, bool with_scaled)
{
    os << "method,problem,w,n,value_re,value_im,abs_err,rel_err,rank_used,residual_inf,time_ms";
    if (with_scaled) os << ",scaled_err";
    os << ",note\n";
    for (const CsvRecord& r : rows) {
        os << csv_field(r.method) << ',' << csv_field(r.problem) << ',' << format_double(r.w) << ',' << r.n << ','
           << (r.value ? format_double(r.value->real()) : "") << ','
           << (r.value ? format_double(r.value->imag()) : "") << ',' << opt_field(r.abs_err) << ','
           << opt_field(r.rel_err) << ',' << opt_field(r.rank_used) << ',' << opt_field(r.residual_inf) << ','
           << format_double(r.time_ms);
        if (with_scaled) os << ',' << opt_field(r.scaled_err);
        os << ',' << csv_field(r.note) << '\n';
    }
}

CsvRecord integrate_record(const std::string& problem, double w, int n, CliMethod method, const RunOptions& opts)
{
    const ProblemEntry& e = ProblemRegistry::builtin().at(problem);
    if (!std::isfinite(w)) throw std::invalid_argument("w must be finite");
    bool routed = false;
    if (method != CliMethod::oracle && std::abs(w) < kMinFrequency) {
        method = CliMethod::oracle;
        routed = true;
    }
    std::optional<ReferenceValue> ref;
    if (w != 0.0) ref = default_reference(e, w, method, opts);
    CsvRecord rec = record_with_reference(e, w, n, method, opts, ref);
    if (routed) append_note(rec, "warning: |w| < 1 routed to oracle");
    return rec;
}

bool table_has_scaled_column(const std::string& id) { return id == "fig1"; }

std::vector<CsvRecord> table_records(const std::string& id, const RunOptions& opts)
{
    const ProblemRegistry& reg = ProblemRegistry::builtin();
    std::vector<CsvRecord> rows;

    if (id == "ta0") {
        RunOptions o = opts;
        o.grid = GridKind::radau;
        const ProblemEntry& e = reg.at("log_unit");
        for (int n : {4, 8, 16, 32, 64})
            for (double w : {1e1, 1e2, 1e3, 1e4})
                rows.push_back(record_with_reference(e, w, n, CliMethod::classic, o, e.exact_reference(w)));
        for (auto& r : rows) append_note(r, "grid=radau");
        return rows;
    }
    if (id == "ta1") {
        for (int m = 2; m <= 6; ++m) {
            const ProblemEntry& e = reg.at("cheb_moment_" + std::to_string(m));
            for (double w : {1e1, 1e2, 1e3, 1e4})
                rows.push_back(record_with_reference(e, w, m + 1, CliMethod::log_linear, opts, e.exact_reference(w)));
        }
        return rows;
    }
    if (id == "ta2") {
        const ProblemEntry& lin = reg.at("exp_log_linear");
        for (int n = 6; n <= 11; ++n)
            for (double w : {1e2, 1e5})
                rows.push_back(record_with_reference(lin, w, n, CliMethod::log_linear, opts, lin.exact_reference(w)));
        const ProblemEntry& nl = reg.at("exp_log_nonlinear");
        for (int n = 8; n <= 18; n += 2)
            for (double w : {1e2, 1e5})
                rows.push_back(record_with_reference(nl, w, n, CliMethod::log_general, opts, nl.exact_reference(w)));
        return rows;
    }
    if (id == "ta6_levin") {
        const ProblemEntry& e = reg.at("osc_sin");
        for (double w : {1e2, 1e3, 1e4}) {
            ReferenceValue ref;
            if (std::abs(w) <= kOracleAttachMaxW) {
                ref = e.oracle_reference(w, opts.tol);
            } else {
                ref.value = integrate(e.part_problem(0, w), Method::log_general, 48, GridKind::lobatto, opts.rel_tol).value;
                ref.source = ReferenceSource::high_n_levin;
            }
            for (int n = 12; n <= 24; n += 2)
                rows.push_back(record_with_reference(e, w, n, CliMethod::log_general, opts, ref));
        }
        return rows;
    }
    if (id == "fig1") {
        const std::pair<const char*, CliMethod> series[] = {{"exp_log_linear", CliMethod::log_linear},
                                                            {"exp_log_nonlinear", CliMethod::log_general}};
        for (const auto& [name, method] : series) {
            const ProblemEntry& e = reg.at(name);
            for (int n : {8, 12}) {
                for (int k = 0; k <= 12; ++k) {
                    const double w = std::pow(10.0, 2.0 + k / 4.0);
                    CsvRecord r = record_with_reference(e, w, n, method, opts, e.exact_reference(w));
                    if (r.abs_err) r.scaled_err = scaled_error(*r.abs_err, w);
                    rows.push_back(std::move(r));
                }
            }
        }
        return rows;
    }
    throw std::invalid_argument("unknown table id '" + id + "' (expected ta0, ta1, ta2, ta6_levin, fig1)");
}

SweepResult sweep_records(const std::string& problem, const std::vector<double>& w_list,
                          const std::vector<int>& n_list, CliMethod method, const RunOptions& opts)
{
    if (w_list.empty() || n_list.empty()) throw std::invalid_argument("sweep: w and n lists must be nonempty");
    ProblemRegistry::builtin().at(problem);
    SweepResult res;
    for (double w : w_list) {
        for (int n : n_list) {
            try {
                res.rows.push_back(integrate_record(problem, w, n, method, opts));
            } catch (const oracle_not_converged& ex) {
                CsvRecord r;
                r.method = to_string(method);
                r.problem = problem;
                r.w = w;
                r.n = n;
                r.value = ex.best();
                r.note = std::string("numeric-failure: ") + ex.what() + "; est_error=" + format_double(ex.est_error());
                res.rows.push_back(std::move(r));
                ++res.failures;
            } catch (const std::exception& ex) {
                CsvRecord r;
                r.method = to_string(method);
                r.problem = problem;
                r.w = w;
                r.n = n;
                const bool usage = dynamic_cast<const std::invalid_argument*>(&ex) != nullptr;
                r.note = std::string(usage ? "error: " : "numeric-failure: ") + ex.what();
                res.rows.push_back(std::move(r));
                ++res.failures;
            }
        }
    }
    return res;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"levinq: Levin quadrature for oscillatory integrals with a logarithmic endpoint singularity"};
    app.require_subcommand(1);

    const std::vector<std::string> problems = ProblemRegistry::builtin().names();
    const std::vector<std::string> methods{"classic", "log_linear", "log_general", "oracle"};

    std::string problem, method = "log_linear", grid = "lobatto", out_path, table_id;
    double w = 0.0;
    int n = 16;
    std::vector<double> w_list;
    std::vector<int> n_list;
    RunOptions opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", opts.tol, "oracle tolerance")->check(CLI::Range(1e-13, 1.0));
        sub->add_option("--out", out_path, "output CSV path (default stdout)");
    };
    auto add_method = [&](CLI::App* sub) {
        sub->add_option("--problem", problem, "registry problem name")->required()->check(CLI::IsMember(problems));
        sub->add_option("--method", method, "classic|log_linear|log_general|oracle")->check(CLI::IsMember(methods));
        sub->add_option("--grid", grid, "collocation grid for classic")->check(CLI::IsMember({"lobatto", "radau"}));
    };

    CLI::App* integ = app.add_subcommand("integrate", "integrate one registry problem");
    add_method(integ);
    integ->add_option("--w", w, "frequency")->required();
    integ->add_option("--n", n, "number of collocation nodes");
    add_common(integ);

    CLI::App* table = app.add_subcommand("table", "reproduce a result table as CSV");
    table->add_option("--id", table_id, "ta0|ta1|ta2|ta6_levin|fig1")
        ->required()
        ->check(CLI::IsMember({"ta0", "ta1", "ta2", "ta6_levin", "fig1"}));
    add_common(table);

    CLI::App* sweep = app.add_subcommand("sweep", "frequency/node sweep");
    add_method(sweep);
    sweep->add_option("--w-list", w_list, "comma-separated frequencies")->required()->delimiter(',');
    sweep->add_option("--n-list", n_list, "comma-separated node counts")->required()->delimiter(',');
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    opts.grid = grid == "radau" ? GridKind::radau : GridKind::lobatto;
    const CliMethod cli_method = *parse_method(method);

    std::vector<CsvRecord> rows;
    bool scaled = false;
    int code = kExitOk;
    try {
        if (integ->parsed()) {
            rows.push_back(integrate_record(problem, w, n, cli_method, opts));
        } else if (table->parsed()) {
            rows = table_records(table_id, opts);
            scaled = table_has_scaled_column(table_id);
        } else {
            SweepResult res = sweep_records(problem, w_list, n_list, cli_method, opts);
            if (res.failures == res.rows.size()) code = kExitNumeric;
            rows = std::move(res.rows);
        }
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }

    if (out_path.empty()) {
        write_csv(out, rows, scaled);
    } else {
        std::ofstream f(out_path);
        if (!f) {
            err << "usage error: cannot open output file '" << out_path << "'\n";
            return kExitUsage;
        }
        write_csv(f, rows, scaled);
    }
    return code;
}

}  // namespace levinq
