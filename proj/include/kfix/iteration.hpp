#pragma once

#include "kfix/mapping.hpp"
#include "kfix/space.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace kfix {

inline constexpr double kDefaultIterationTol = 1e-10;
inline constexpr std::size_t kDefaultMaxIters = 10000;
/// Distance under which two iterates count as the same point for cycle detection.
inline constexpr double kCycleTolerance = 1e-9;

struct IterationConfig {
    double lambda = 1.0;
    std::size_t max_iters = kDefaultMaxIters;
    /// Stop once ||p_{m+1} - p_m|| < tol.
    double tol = kDefaultIterationTol;
    /// Number of past iterates searched for a repeat; 0 disables.
    std::size_t cycle_window = 0;

    /// Throws UsageError unless 0 < lambda <= 1, max_iters >= 1 and tol > 0.
    void validate() const;
};

/// lambda = 1/(k+1), the step that turns an enriched contraction with
/// parameter k into a contraction of the averaged map. k >= 0.
double lambda_from_k(double k);

enum class Status { converged, max_iters_reached, cycle_detected };

std::string_view to_string(Status status);

struct IterationTrace {
    std::vector<Vector> iterates;
    /// step_norms[m] = ||iterates[m+1] - iterates[m]||.
    std::vector<double> step_norms;
    Status status = Status::max_iters_reached;
    /// Present iff status == converged.
    std::optional<Vector> limit;
    /// Smallest repeat period when status == cycle_detected, else 0.
    std::size_t cycle_period = 0;

    std::size_t iterations() const noexcept { return step_norms.size(); }
    const Vector& last() const { return iterates.back(); }
};

/// An iterate became non-finite. Carries the trace up to the last finite
/// iterate.
class NumericOverflow : public std::runtime_error {
public:
    NumericOverflow(const std::string& what, IterationTrace partial)
        : std::runtime_error(what), partial_(std::move(partial))
    {
    }
    const IterationTrace& partial_trace() const noexcept { return partial_; }

private:
    IterationTrace partial_;
};

/// p_{m+1} = (1 - lambda) p_m + lambda R p_m.
///
/// Termination: converged when a step norm drops below tol (a start point
/// whose first step is already below tol is accepted with zero iterations and
/// nothing appended); cycle_detected when the newest iterate repeats one of the
/// last cycle_window iterates with period >= 2; otherwise max_iters_reached.
IterationTrace krasnoselskij(const Mapping& map, const IterationConfig& config, const Vector& p0);

/// p_{m+1} = R p_m. config.lambda is ignored.
IterationTrace picard(const Mapping& map, const IterationConfig& config, const Vector& p0);

/// p_{2m+1} = R_lambda p_{2m}, p_{2m+2} = S_lambda p_{2m+1}.
/// Converged only when the step norm and the residuals of both averaged maps
/// at the newest iterate are below tol, so a 2-cycle between Fix(R) and
/// Fix(S) is never reported as a common fixed point.
IterationTrace alternating(const Mapping& map_r, const Mapping& map_s,
                           const IterationConfig& config, const Vector& p0);

/// One independent Krasnoselskij run.
struct RunJob {
    Mapping map;
    IterationConfig config;
    Vector start;
};

/// Runs the jobs concurrently (OpenMP). Output order matches input order and
/// each trace is identical to krasnoselskij() on the same job. The first
/// exception (by job index) is rethrown after all jobs finish.
std::vector<IterationTrace> run_batch(std::span<const RunJob> jobs);

/// Serial reference for run_batch.
std::vector<IterationTrace> run_batch_serial(std::span<const RunJob> jobs);

/// Header "n,step_norm,x0,...,x{d-1}", one row per iterate, step_norm empty on
/// row 0, numbers with 17 significant digits.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);
std::string trace_csv_header(std::size_t dimension);

/// Formats a double with 17 significant digits (round-trip safe).
std::string format_number(double x);

} // namespace kfix
