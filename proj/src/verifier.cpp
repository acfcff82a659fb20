#include "kfix/verifier.hpp"

#include "kfix/errors.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <string>

namespace kfix {

void ContractionParams::validate() const
{
    auto unit_open = [](double x) { return x > 0.0 && x < 1.0; };
    if (!unit_open(a) || !unit_open(b) || !unit_open(c))
        throw UsageError("contraction params: a, b, c must lie in (0, 1)");
    if (!(a + b + c < 1.0))
        throw UsageError("contraction params: a + b + c must be < 1, got " +
                         std::to_string(a + b + c));
    if (!(k >= 0.0) || !std::isfinite(k))
        throw UsageError("contraction params: k must be a finite nonnegative number");
}

namespace {

// base^exponent for a nonnegative base, with 0^0 = 1.
double factor(double base, double exponent)
{
    if (exponent == 0.0) return 1.0;
    if (base == 0.0) return 0.0;
    return std::pow(base, exponent);
}

void require_pair(const Mapping& map, const Vector& p, const Vector& q, const char* where)
{
    if (p.dimension() != map.dimension() || q.dimension() != map.dimension())
        throw UsageError(std::string(where) + ": point dimension does not match the mapping");
}

} // namespace

double lhs_enriched(const ContractionParams& params, const Mapping& map, const Vector& p,
                    const Vector& q)
{
    require_pair(map, p, q, "lhs_enriched");
    // Grouped per point so that Rp = -kp cancels exactly.
    return map.space().norm((params.k * p + map(p)) - (params.k * q + map(q)));
}

double enriched_product(const ContractionParams& params, const Mapping& map, const Vector& p,
                        const Vector& q)
{
    require_pair(map, p, q, "rhs_enriched");
    const NormedSpace& space = map.space();
    const double scale = params.k + 1.0;
    const Vector rp = map(p);
    const Vector rq = map(q);
    const Vector res_p = p - rp;
    const Vector res_q = q - rq;
    const Vector spread = scale * (p - q);

    const double mixed = 0.5 * (space.norm(spread + res_q) + space.norm(-spread + res_p));
    return factor(space.norm(spread), params.b) * factor(space.norm(res_p), params.a) *
           factor(space.norm(res_q), params.c) * factor(mixed, params.tail_exponent());
}

double rhs_enriched(const ContractionParams& params, const ComparisonFn& zeta, const Mapping& map,
                    const Vector& p, const Vector& q)
{
    return zeta(enriched_product(params, map, p, q));
}

double lhs_interpolative(const Mapping& map, const Vector& p, const Vector& q)
{
    require_pair(map, p, q, "lhs_interpolative");
    return map.space().distance(map(p), map(q));
}

double interpolative_product(const ContractionParams& params, const Mapping& map,
                             const Vector& p, const Vector& q)
{
    require_pair(map, p, q, "rhs_interpolative");
    const NormedSpace& space = map.space();
    const Vector rp = map(p);
    const Vector rq = map(q);
    const double d_pq = space.distance(p, q);
    const double d_p = space.distance(p, rp);
    const double d_q = space.distance(q, rq);
    const double cross = 0.5 * (space.distance(p, rq) + space.distance(q, rp));
    return factor(d_pq, params.b) * factor(d_p, params.a) * factor(d_q, params.c) *
           factor(cross, params.tail_exponent());
}

double rhs_interpolative(const ContractionParams& params, const ComparisonFn& zeta,
                         const Mapping& map, const Vector& p, const Vector& q)
{
    return zeta(interpolative_product(params, map, p, q));
}

PairCheck check_pair(const ContractionParams& params, const ComparisonFn& zeta, const Mapping& map,
                     const Vector& p, const Vector& q, double fix_tol)
{
    PairCheck out{p, q};
    if (fix_residual(map, p) < fix_tol || fix_residual(map, q) < fix_tol) {
        out.skipped = true;
        return out;
    }
    out.lhs = lhs_enriched(params, map, p, q);
    out.rhs = rhs_enriched(params, zeta, map, p, q);
    out.holds = out.lhs <= out.rhs + kHoldSlack;
    return out;
}

namespace {

void validate_inputs(const ContractionParams& params, const Mapping& map,
                     std::span<const PointPair> pairs, const VerifyOptions& options)
{
    params.validate();
    if (!(options.fix_tol >= 0.0))
        throw UsageError("verify: fix_tol must be nonnegative");
    for (const auto& [p, q] : pairs)
        require_pair(map, p, q, "verify");
}

VerificationReport aggregate(std::vector<PairCheck>&& checks, const VerifyOptions& options)
{
    VerificationReport report;
    report.n_pairs = checks.size();
    for (std::size_t i = 0; i < checks.size(); ++i) {
        PairCheck& check = checks[i];
        if (check.skipped) {
            ++report.n_skipped;
            continue;
        }
        report.worst_margin = std::min(report.worst_margin, check.rhs - check.lhs);
        if (!check.holds) {
            ++report.n_violations;
            if (report.witnesses.size() < options.max_witnesses)
                report.witnesses.push_back({i, std::move(check)});
        }
    }
    return report;
}

} // namespace

VerificationReport verify_pairs_serial(const ContractionParams& params, const ComparisonFn& zeta,
                                       const Mapping& map, std::span<const PointPair> pairs,
                                       const VerifyOptions& options)
{
    validate_inputs(params, map, pairs, options);
    std::vector<PairCheck> checks;
    checks.reserve(pairs.size());
    for (const auto& [p, q] : pairs)
        checks.push_back(check_pair(params, zeta, map, p, q, options.fix_tol));
    return aggregate(std::move(checks), options);
}

VerificationReport verify_pairs(const ContractionParams& params, const ComparisonFn& zeta,
                                const Mapping& map, std::span<const PointPair> pairs,
                                const VerifyOptions& options)
{
    validate_inputs(params, map, pairs, options);
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());
    std::vector<PairCheck> checks(pairs.size(), PairCheck{Vector{0.0}, Vector{0.0}});
    std::exception_ptr first_error;
    std::ptrdiff_t first_index = n;

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            checks[i] = check_pair(params, zeta, map, pairs[i].first, pairs[i].second,
                                   options.fix_tol);
        } catch (...) {
#pragma omp critical(kfix_verify_error)
            if (i < first_index) {
                first_index = i;
                first_error = std::current_exception();
            }
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return aggregate(std::move(checks), options);
}

void PairSampler::validate() const
{
    if (n_pairs == 0)
        throw UsageError("sampler: n_pairs must be at least 1");
    if (lo.dimension() != hi.dimension())
        throw UsageError("sampler: lo and hi have different dimensions");
    for (std::size_t i = 0; i < lo.dimension(); ++i) {
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw UsageError("sampler: box bounds must be finite");
        if (!(hi[i] > lo[i]))
            throw UsageError("sampler: box has zero volume (hi <= lo in coordinate " +
                             std::to_string(i) + ")");
    }
}

std::vector<PointPair> draw_pairs(const PairSampler& sampler)
{
    sampler.validate();
    std::mt19937_64 engine(sampler.seed);
    // Top 53 bits -> [0, 1); avoids implementation-defined distributions.
    auto unit = [&engine] { return double(engine() >> 11) * 0x1.0p-53; };
    const std::size_t d = sampler.lo.dimension();
    auto point = [&] {
        Vector v = Vector::zeros(d);
        for (std::size_t i = 0; i < d; ++i)
            v[i] = sampler.lo[i] + unit() * (sampler.hi[i] - sampler.lo[i]);
        return v;
    };

    std::vector<PointPair> pairs;
    pairs.reserve(sampler.n_pairs);
    for (std::size_t i = 0; i < sampler.n_pairs; ++i) {
        Vector p = point();
        Vector q = point();
        pairs.emplace_back(std::move(p), std::move(q));
    }
    return pairs;
}

VerificationReport sample_verify(const ContractionParams& params, const ComparisonFn& zeta,
                                 const Mapping& map, const PairSampler& sampler,
                                 const VerifyOptions& options, std::span<const PointPair> extra)
{
    if (sampler.lo.dimension() != map.dimension())
        throw UsageError("sample_verify: sampler box dimension does not match the mapping");
    std::vector<PointPair> pairs(extra.begin(), extra.end());
    auto drawn = draw_pairs(sampler);
    pairs.insert(pairs.end(), std::make_move_iterator(drawn.begin()),
                 std::make_move_iterator(drawn.end()));
    return verify_pairs(params, zeta, map, pairs, options);
}

} // namespace kfix
