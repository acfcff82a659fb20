#pragma once

#include "kfix/iteration.hpp"
#include "kfix/mapping.hpp"
#include "kfix/space.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace kfix {

/// Closed convex subset of R^d with a closed-form Euclidean projection.
class ConvexSet {
public:
    struct Box {
        Vector lo;
        Vector hi;
    };
    struct Ball {
        Vector center;
        double radius;
    };
    /// { x : <normal, x> <= offset }
    struct Halfspace {
        Vector normal;
        double offset;
    };
    /// { x : <normal, x> = offset }
    struct Hyperplane {
        Vector normal;
        double offset;
    };
    using Variant = std::variant<Box, Ball, Halfspace, Hyperplane>;

    static ConvexSet box(Vector lo, Vector hi);
    static ConvexSet ball(Vector center, double radius);
    static ConvexSet halfspace(Vector normal, double offset);
    static ConvexSet hyperplane(Vector normal, double offset);

    std::size_t dimension() const noexcept;
    const Variant& variant() const noexcept { return set_; }

private:
    explicit ConvexSet(Variant set) : set_(std::move(set)) {}
    Variant set_;
};

/// Euclidean nearest point of the set. Returns p itself (bit-identical) when
/// p is already a member. Throws UsageError on dimension mismatch.
Vector project(const ConvexSet& set, const Vector& p);

/// ||p - project(set, p)||_2.
double distance(const ConvexSet& set, const Vector& p);

/// Dense rows x cols matrix, mapping R^cols to R^rows.
class LinearOperator {
public:
    LinearOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major);
    static LinearOperator from_rows(const std::vector<std::vector<double>>& rows);
    static LinearOperator identity(std::size_t n);
    static LinearOperator diagonal(const std::vector<double>& entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector apply(const Vector& x) const;
    /// Adjoint action, i.e. multiplication by the transpose.
    Vector apply_transpose(const Vector& y) const;
    bool is_zero() const noexcept;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

inline constexpr double kNormSafetyFactor = 1.01;
inline constexpr double kOperatorNormTol = 1e-13;
inline constexpr std::size_t kOperatorNormMaxIters = 20000;

/// Spectral norm estimate: power iteration on T^T T from the normalized
/// all-ones vector, times the 1.01 safety factor. If the start vector turns
/// out to be (numerically) orthogonal to the dominant singular direction the
/// iteration is restarted from the largest column. Throws UsageError for the
/// zero operator.
double operator_norm(const LinearOperator& op, double tol = kOperatorNormTol,
                     std::size_t max_iters = kOperatorNormMaxIters);

/// Find x in C with T x in Q.
struct ScfpProblem {
    ConvexSet domain_set;
    ConvexSet codomain_set;
    LinearOperator op;
    /// Overestimate of ||T||, used as the step 1/||T||^2.
    double norm_estimate;

    /// Computes the estimate with operator_norm() when none is given. A given
    /// estimate below the spectral norm is rejected with UsageError.
    static ScfpProblem make(ConvexSet domain_set, ConvexSet codomain_set, LinearOperator op,
                            std::optional<double> norm_estimate = std::nullopt);
};

/// L p = P_C(p + T^T (P_Q(T p) - T p) / ||T||^2) on R^cols with the l2 norm.
Mapping build_L(const ScfpProblem& problem);

struct Feasibility {
    double dist_domain;
    double dist_codomain;
};

Feasibility feasibility(const ScfpProblem& problem, const Vector& x);

struct ScfpResult {
    IterationTrace trace;
    Feasibility feasibility;
};

/// Krasnoselskij iteration of L from p0; distances are taken at the final iterate.
ScfpResult solve_scfp(const ScfpProblem& problem, const IterationConfig& config, const Vector& p0);

inline constexpr double kDefaultScfpLambda = 0.5;

} // namespace kfix
