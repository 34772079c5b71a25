#pragma once

// Command-line surface: one-off integrations, table reproduction and sweeps,
// all emitted as CSV.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levinq/levin.hpp"
#include "levinq/oracle.hpp"

namespace levinq {

enum class CliMethod { classic, log_linear, log_general, oracle };

std::optional<CliMethod> parse_method(std::string_view name);
const char* to_string(CliMethod m);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

struct RunOptions {
    GridKind grid = GridKind::lobatto;
    double tol = kOracleDefaultTol;  // oracle tolerance
    double rel_tol = kDefaultTsvdRelTol;
};

struct CsvRecord {
    std::string method;
    std::string problem;
    double w = 0.0;
    int n = 0;
    std::optional<Complex> value;
    std::optional<double> abs_err;
    std::optional<double> rel_err;
    std::optional<long> rank_used;
    std::optional<double> residual_inf;
    double time_ms = 0.0;
    std::optional<double> scaled_err;  // fig1 only
    std::string note;
};

/// Decimal form with 17 significant digits (round-trips a double).
std::string format_double(double v);

/// Header plus one line per record. The scaled_err column is written only
/// when `with_scaled` is set.
void write_csv(std::ostream& os, const std::vector<CsvRecord>& rows, bool with_scaled = false);

/// Runs one integration. Throws std::invalid_argument for usage problems and
/// numeric_failure / unsupported_problem / std::domain_error otherwise.
CsvRecord integrate_record(const std::string& problem, double w, int n, CliMethod method,
                           const RunOptions& opts = {});

/// Table ids: ta0, ta1, ta2, ta6_levin, fig1.
std::vector<CsvRecord> table_records(const std::string& id, const RunOptions& opts = {});
bool table_has_scaled_column(const std::string& id);

struct SweepResult {
    std::vector<CsvRecord> rows;  // w-major, n-minor
    std::size_t failures = 0;
};

/// Row-level failures are recorded in the note column instead of throwing.
SweepResult sweep_records(const std::string& problem, const std::vector<double>& w_list,
                          const std::vector<int>& n_list, CliMethod method, const RunOptions& opts = {});

/// Entry point used by the levinq executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levinq
