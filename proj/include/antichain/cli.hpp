#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace antichain::cli {

enum class Command { eval, check_antichain, length, dimension, projections, export_mesh };
enum class Format { json, csv };

const char* to_string(Command c) noexcept;

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
    Command command = Command::eval;
    int n = 3;
    std::string kind = "salem";
    double lambda = 0.25;
    int depth = 52;
    std::uint64_t seed = 0;

    std::vector<double> point;                   // eval
    std::uint64_t pairs = 1'000'000;             // check-antichain
    int k = 22;                                  // length
    int k_min = 0;                               // dimension; 0 picks the per-n default
    int k_max = 0;
    int samples = 0;                             // dimension, projections; 0 picks the default
    int probe_depth = 40;                        // projections
    double eps = 0.01;
    int domain_depth = 0;                        // 0 picks the per-n default
    int image_depth = 0;
    int resolution = 9;                          // export-mesh

    std::optional<std::string> output_path;
    Format format = Format::json;
    bool timing = true;
    std::uint64_t budget = 100'000'000;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string report;
    /// Human-readable notes for stderr (warnings, error messages).
    std::string diagnostics;
};

/// Fills per-n defaults (depth windows, projection depths).
RunConfig with_defaults(RunConfig config);

/// Executes one command. Never throws; failures map onto exit codes.
RunResult run(const RunConfig& config);

struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
    std::string message;
};

/// Parses argv; `config` is empty when parsing ended (help or error).
ParseOutcome parse(int argc, const char* const* argv);

/// parse + run + write the report to --output or `out`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace antichain::cli
