#pragma once

#include "kfix/comparison.hpp"
#include "kfix/mapping.hpp"
#include "kfix/space.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace kfix {

/// Exponents a, b, c in (0, 1) with a + b + c < 1 and enrichment k >= 0.
struct ContractionParams {
    double a;
    double b;
    double c;
    double k = 0.0;

    /// Throws UsageError when an invariant is violated.
    void validate() const;
    double tail_exponent() const noexcept { return 1.0 - a - b - c; }
};

inline constexpr double kHoldSlack = 1e-12;
inline constexpr double kDefaultFixTol = 1e-9;
inline constexpr std::size_t kDefaultMaxWitnesses = 16;

struct PairCheck {
    Vector p;
    Vector q;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    /// p or q lies within fix_tol of Fix(R); the inequality is not required there.
    bool skipped = false;
};

struct Witness {
    std::size_t index;
    PairCheck check;
};

struct VerificationReport {
    std::size_t n_pairs = 0;
    std::size_t n_skipped = 0;
    std::size_t n_violations = 0;
    /// min(rhs - lhs) over checked pairs; +inf when every pair was skipped.
    double worst_margin = std::numeric_limits<double>::infinity();
    /// Violating pairs in sample order, capped.
    std::vector<Witness> witnesses;
};

/// ||k(p - q) + Rp - Rq||.
double lhs_enriched(const ContractionParams& params, const Mapping& map, const Vector& p,
                    const Vector& q);

/// zeta[ ||(k+1)(p-q)||^b ||p-Rp||^a ||q-Rq||^c
///       (1/2 (||(k+1)(p-q) + q - Rq|| + ||(k+1)(q-p) + p - Rp||))^(1-a-b-c) ].
/// A zero exponent contributes a factor 1 (0^0 = 1).
double rhs_enriched(const ContractionParams& params, const ComparisonFn& zeta, const Mapping& map,
                    const Vector& p, const Vector& q);

/// The bracketed product inside zeta of rhs_enriched.
double enriched_product(const ContractionParams& params, const Mapping& map, const Vector& p,
                        const Vector& q);

/// Plain interpolative form: ||Rp - Rq||.
double lhs_interpolative(const Mapping& map, const Vector& p, const Vector& q);

/// Plain interpolative form:
/// zeta[ ||p-q||^b ||p-Rp||^a ||q-Rq||^c (1/2 (||p-Rq|| + ||q-Rp||))^(1-a-b-c) ].
/// params.k is ignored.
double rhs_interpolative(const ContractionParams& params, const ComparisonFn& zeta,
                         const Mapping& map, const Vector& p, const Vector& q);

/// The bracketed product inside zeta of rhs_interpolative.
double interpolative_product(const ContractionParams& params, const Mapping& map,
                             const Vector& p, const Vector& q);

PairCheck check_pair(const ContractionParams& params, const ComparisonFn& zeta, const Mapping& map,
                     const Vector& p, const Vector& q, double fix_tol = kDefaultFixTol);

using PointPair = std::pair<Vector, Vector>;

struct VerifyOptions {
    double fix_tol = kDefaultFixTol;
    std::size_t max_witnesses = kDefaultMaxWitnesses;
};

/// Checks every pair concurrently (OpenMP). Aggregation walks the pairs in
/// index order, so the report does not depend on the thread schedule.
VerificationReport verify_pairs(const ContractionParams& params, const ComparisonFn& zeta,
                                const Mapping& map, std::span<const PointPair> pairs,
                                const VerifyOptions& options = {});

/// Serial reference for verify_pairs.
VerificationReport verify_pairs_serial(const ContractionParams& params, const ComparisonFn& zeta,
                                       const Mapping& map, std::span<const PointPair> pairs,
                                       const VerifyOptions& options = {});

/// Uniform sampling over the box [lo, hi]; pairs drawn independently from a
/// seeded 64-bit Mersenne twister.
struct PairSampler {
    Vector lo;
    Vector hi;
    std::size_t n_pairs;
    std::uint64_t seed;

    /// Throws UsageError for n_pairs == 0, mismatched bounds or a box of
    /// zero volume (some hi_i <= lo_i).
    void validate() const;
};

/// Deterministic for a given sampler; portable across standard libraries.
std::vector<PointPair> draw_pairs(const PairSampler& sampler);

/// Checks `extra` pairs first (indices 0..), then sampler.n_pairs random pairs.
VerificationReport sample_verify(const ContractionParams& params, const ComparisonFn& zeta,
                                 const Mapping& map, const PairSampler& sampler,
                                 const VerifyOptions& options = {},
                                 std::span<const PointPair> extra = {});

} // namespace kfix
