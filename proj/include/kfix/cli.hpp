#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace kfix::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitMaxIters = 2,
    kExitCycle = 3,
    kExitViolation = 4,
};

enum class Command { iterate, verify, scfp, reproduce };

struct RunSpec {
    Command command = Command::iterate;
    /// Problem file, or the target name for `reproduce`.
    std::string input;
    std::filesystem::path output_dir = ".";
    std::optional<double> lambda;
    std::optional<double> tol;
    std::optional<std::size_t> max_iters;
    std::optional<std::uint64_t> seed;
    bool picard = false;
};

/// Writes <out>/trace.csv and a one-line summary. 0 converged, 2 max
/// iterations (or non-finite iterate), 3 cycle, 1 usage error.
int cmd_iterate(const RunSpec& spec, std::ostream& out, std::ostream& err);
/// Writes <out>/report.json. 0 no violations, 4 violations, 1 usage error.
int cmd_verify(const RunSpec& spec, std::ostream& out, std::ostream& err);
/// Writes <out>/solution.json. 0 iff both feasibility distances are below
/// the feasibility tolerance; else 3 on a cycle, 2 otherwise.
int cmd_scfp(const RunSpec& spec, std::ostream& out, std::ostream& err);
/// Writes the target artifact under <out>. 1 for an unknown target.
int cmd_reproduce(const RunSpec& spec, std::ostream& out, std::ostream& err);

int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses `kfix iterate|verify|scfp|reproduce [options] INPUT` and runs it.
/// KFIX_OUT, when set, overrides --out.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace kfix::cli
