#include "kfix/iteration.hpp"

#include "kfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace kfix {

void IterationConfig::validate() const
{
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw UsageError("iteration: lambda must lie in (0, 1], got " + std::to_string(lambda));
    if (max_iters == 0)
        throw UsageError("iteration: max_iters must be at least 1");
    if (!(tol > 0.0))
        throw UsageError("iteration: tol must be positive");
}

double lambda_from_k(double k)
{
    if (!(k >= 0.0) || !std::isfinite(k))
        throw UsageError("lambda_from_k: k must be a finite nonnegative number");
    return 1.0 / (k + 1.0);
}

std::string_view to_string(Status status)
{
    switch (status) {
    case Status::converged: return "converged";
    case Status::max_iters_reached: return "max_iters_reached";
    case Status::cycle_detected: return "cycle_detected";
    }
    return "?";
}

namespace {

// Smallest period j >= 2 (j <= window) with ||p_n - p_{n-j}|| within the cycle
// tolerance, scaled down by the current step when that step is small so that
// a slowly contracting oscillation is not mistaken for a cycle.
std::size_t find_period(const NormedSpace& space, const IterationTrace& trace, std::size_t window)
{
    const std::size_t n = trace.iterates.size() - 1;
    const double step = trace.step_norms.back();
    const double threshold = kCycleTolerance * std::min(1.0, step);
    const Vector& newest = trace.iterates[n];
    for (std::size_t j = 1; j <= std::min(window, n); ++j) {
        if (space.distance(newest, trace.iterates[n - j]) <= threshold)
            return j >= 2 ? j : 0;
    }
    return 0;
}

// Shared driver. `step(m, p)` produces p_{m+1}; `accept(next, step_norm)`
// decides convergence at the newly produced iterate, `accept_start(p0)` at p0.
template <class Step, class Accept, class AcceptStart>
IterationTrace drive(const NormedSpace& space, const IterationConfig& config, const Vector& p0,
                     Step step, Accept accept, AcceptStart accept_start)
{
    if (p0.dimension() != space.dimension()) {
        throw UsageError("iteration: start point has dimension " + std::to_string(p0.dimension()) +
                         ", space has " + std::to_string(space.dimension()));
    }
    IterationTrace trace;
    trace.iterates.push_back(p0);
    if (!p0.all_finite())
        throw NumericOverflow("iteration: start point is not finite", trace);

    if (accept_start(p0)) {
        trace.status = Status::converged;
        trace.limit = p0;
        return trace;
    }

    for (std::size_t m = 0; m < config.max_iters; ++m) {
        Vector next = step(m, trace.iterates.back());
        if (!next.all_finite()) {
            throw NumericOverflow("iteration: non-finite iterate at n = " + std::to_string(m + 1),
                                  std::move(trace));
        }
        const double s = space.distance(next, trace.iterates.back());
        trace.iterates.push_back(std::move(next));
        trace.step_norms.push_back(s);

        if (accept(trace.iterates.back(), s)) {
            trace.status = Status::converged;
            trace.limit = trace.iterates.back();
            return trace;
        }
        if (config.cycle_window > 0) {
            if (const std::size_t period = find_period(space, trace, config.cycle_window)) {
                trace.status = Status::cycle_detected;
                trace.cycle_period = period;
                return trace;
            }
        }
    }
    trace.status = Status::max_iters_reached;
    return trace;
}

IterationTrace run_single(const Mapping& map, const IterationConfig& config, const Vector& p0)
{
    config.validate();
    const double lambda = config.lambda;
    auto step = [&](std::size_t, const Vector& p) { return affine_combine(lambda, p, map(p)); };
    auto accept = [&](const Vector&, double s) { return s < config.tol; };
    auto accept_start = [&](const Vector& p) {
        return map.space().distance(step(0, p), p) < config.tol;
    };
    return drive(map.space(), config, p0, step, accept, accept_start);
}

} // namespace

IterationTrace krasnoselskij(const Mapping& map, const IterationConfig& config, const Vector& p0)
{
    return run_single(map, config, p0);
}

IterationTrace picard(const Mapping& map, const IterationConfig& config, const Vector& p0)
{
    IterationConfig forced = config;
    forced.lambda = 1.0;
    return run_single(map, forced, p0);
}

IterationTrace alternating(const Mapping& map_r, const Mapping& map_s,
                           const IterationConfig& config, const Vector& p0)
{
    config.validate();
    if (!(map_r.space() == map_s.space()))
        throw UsageError("alternating: both mappings must act on the same space");
    const Mapping r = averaged(map_r, config.lambda);
    const Mapping s = averaged(map_s, config.lambda);
    const NormedSpace& space = map_r.space();

    auto common = [&](const Vector& p) {
        return fix_residual(r, p) < config.tol && fix_residual(s, p) < config.tol;
    };
    auto step = [&](std::size_t m, const Vector& p) { return m % 2 == 0 ? r(p) : s(p); };
    auto accept = [&](const Vector& p, double step_norm) {
        return step_norm < config.tol && common(p);
    };
    return drive(space, config, p0, step, accept, common);
}

std::vector<IterationTrace> run_batch_serial(std::span<const RunJob> jobs)
{
    std::vector<IterationTrace> out;
    out.reserve(jobs.size());
    for (const RunJob& job : jobs)
        out.push_back(krasnoselskij(job.map, job.config, job.start));
    return out;
}

std::vector<IterationTrace> run_batch(std::span<const RunJob> jobs)
{
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
    std::vector<IterationTrace> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = krasnoselskij(jobs[i].map, jobs[i].config, jobs[i].start);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace kfix
