#include "kfix/scfp.hpp"

#include "kfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace kfix {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double l2(const Vector& v)
{
    return NormedSpace(v.dimension(), NormKind::l2).norm(v);
}

void require_finite(const Vector& v, const char* what)
{
    if (!v.all_finite())
        throw UsageError(std::string(what) + " must be finite");
}

} // namespace

ConvexSet ConvexSet::box(Vector lo, Vector hi)
{
    require_same_dimension(lo, hi, "box");
    for (std::size_t i = 0; i < lo.dimension(); ++i) {
        if (!(lo[i] <= hi[i]))
            throw UsageError("box: lo must not exceed hi (coordinate " + std::to_string(i) + ")");
    }
    return ConvexSet(Box{std::move(lo), std::move(hi)});
}

ConvexSet ConvexSet::ball(Vector center, double radius)
{
    require_finite(center, "ball center");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw UsageError("ball: radius must be positive and finite");
    return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset)
{
    require_finite(normal, "halfspace normal");
    if (l2(normal) == 0.0)
        throw UsageError("halfspace: normal must be nonzero");
    if (!std::isfinite(offset))
        throw UsageError("halfspace: offset must be finite");
    return ConvexSet(Halfspace{std::move(normal), offset});
}

ConvexSet ConvexSet::hyperplane(Vector normal, double offset)
{
    require_finite(normal, "hyperplane normal");
    if (l2(normal) == 0.0)
        throw UsageError("hyperplane: normal must be nonzero");
    if (!std::isfinite(offset))
        throw UsageError("hyperplane: offset must be finite");
    return ConvexSet(Hyperplane{std::move(normal), offset});
}

std::size_t ConvexSet::dimension() const noexcept
{
    return std::visit(overloaded{
        [](const Box& b) { return b.lo.dimension(); },
        [](const Ball& b) { return b.center.dimension(); },
        [](const Halfspace& h) { return h.normal.dimension(); },
        [](const Hyperplane& h) { return h.normal.dimension(); },
    }, set_);
}

Vector project(const ConvexSet& set, const Vector& p)
{
    if (p.dimension() != set.dimension()) {
        throw UsageError("project: point of dimension " + std::to_string(p.dimension()) +
                         " onto a set of dimension " + std::to_string(set.dimension()));
    }
    return std::visit(overloaded{
        [&](const ConvexSet::Box& b) {
            Vector out = p;
            for (std::size_t i = 0; i < out.dimension(); ++i)
                out[i] = std::clamp(p[i], b.lo[i], b.hi[i]);
            return out;
        },
        [&](const ConvexSet::Ball& b) {
            const Vector offset = p - b.center;
            const double r = l2(offset);
            if (r <= b.radius) return p;
            return b.center + (b.radius / r) * offset;
        },
        [&](const ConvexSet::Halfspace& h) {
            const double excess = dot(h.normal, p) - h.offset;
            if (excess <= 0.0) return p;
            return p - (excess / dot(h.normal, h.normal)) * h.normal;
        },
        [&](const ConvexSet::Hyperplane& h) {
            const double excess = dot(h.normal, p) - h.offset;
            if (excess == 0.0) return p;
            return p - (excess / dot(h.normal, h.normal)) * h.normal;
        },
    }, set.variant());
}

double distance(const ConvexSet& set, const Vector& p)
{
    return l2(p - project(set, p));
}

LinearOperator::LinearOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major))
{
    if (rows == 0 || cols == 0)
        throw UsageError("linear operator: shape must be nonempty");
    if (data_.size() != rows * cols)
        throw UsageError("linear operator: expected " + std::to_string(rows * cols) + " entries");
    for (double x : data_) {
        if (!std::isfinite(x))
            throw UsageError("linear operator: entries must be finite");
    }
}

LinearOperator LinearOperator::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty() || rows.front().empty())
        throw UsageError("linear operator: matrix must be nonempty");
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw UsageError("linear operator: rows have different lengths");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return LinearOperator(rows.size(), cols, std::move(flat));
}

LinearOperator LinearOperator::identity(std::size_t n)
{
    std::vector<double> d(n, 1.0);
    return diagonal(d);
}

LinearOperator LinearOperator::diagonal(const std::vector<double>& entries)
{
    const std::size_t n = entries.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        flat[i * n + i] = entries[i];
    return LinearOperator(n, n, std::move(flat));
}

Vector LinearOperator::apply(const Vector& x) const
{
    if (x.dimension() != cols_)
        throw UsageError("linear operator: input dimension " + std::to_string(x.dimension()) +
                         ", expected " + std::to_string(cols_));
    Vector y = Vector::zeros(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j)
            s += data_[i * cols_ + j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector LinearOperator::apply_transpose(const Vector& y) const
{
    if (y.dimension() != rows_)
        throw UsageError("linear operator: adjoint input dimension " +
                         std::to_string(y.dimension()) + ", expected " + std::to_string(rows_));
    Vector x = Vector::zeros(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            x[j] += data_[i * cols_ + j] * y[i];
    }
    return x;
}

bool LinearOperator::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](double x) { return x == 0.0; });
}

namespace {

// Largest eigenvalue of T^T T by power iteration from `start` (unit length).
double gram_power(const LinearOperator& op, Vector v, double tol, std::size_t max_iters)
{
    double estimate = 0.0;
    for (std::size_t it = 0; it < max_iters; ++it) {
        const Vector w = op.apply_transpose(op.apply(v));
        const double rayleigh = dot(v, w);
        const double len = l2(w);
        if (len == 0.0) return 0.0;
        v = (1.0 / len) * w;
        if (it > 0 && std::abs(rayleigh - estimate) <= tol * rayleigh) {
            estimate = rayleigh;
            break;
        }
        estimate = rayleigh;
    }
    return estimate;
}

} // namespace

double operator_norm(const LinearOperator& op, double tol, std::size_t max_iters)
{
    if (op.is_zero())
        throw UsageError("operator_norm: zero operator");
    if (!(tol > 0.0) || max_iters == 0)
        throw UsageError("operator_norm: tol must be positive and max_iters at least 1");

    const std::size_t n = op.cols();
    const Vector ones = Vector::filled(n, 1.0 / std::sqrt(double(n)));
    double sigma = std::sqrt(gram_power(op, ones, tol, max_iters));

    // ||T e_j|| is a lower bound on ||T||; falling below it means the start
    // vector missed the dominant direction.
    double best_column = 0.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Vector e = Vector::zeros(n);
        e[j] = 1.0;
        const double c = l2(op.apply(e));
        if (c > best_column) {
            best_column = c;
            best_j = j;
        }
    }
    if (sigma < best_column) {
        Vector e = Vector::zeros(n);
        e[best_j] = 1.0;
        sigma = std::max(best_column, std::sqrt(gram_power(op, e, tol, max_iters)));
    }
    return kNormSafetyFactor * sigma;
}

ScfpProblem ScfpProblem::make(ConvexSet domain_set, ConvexSet codomain_set, LinearOperator op,
                              std::optional<double> norm_estimate)
{
    if (domain_set.dimension() != op.cols())
        throw UsageError("scfp: C has dimension " + std::to_string(domain_set.dimension()) +
                         " but T has " + std::to_string(op.cols()) + " columns");
    if (codomain_set.dimension() != op.rows())
        throw UsageError("scfp: Q has dimension " + std::to_string(codomain_set.dimension()) +
                         " but T has " + std::to_string(op.rows()) + " rows");
    const double computed = operator_norm(op);
    double estimate = computed;
    if (norm_estimate) {
        if (!(*norm_estimate > 0.0) || !std::isfinite(*norm_estimate))
            throw UsageError("scfp: norm_estimate must be positive and finite");
        if (*norm_estimate < computed / kNormSafetyFactor - 1e-6)
            throw UsageError("scfp: norm_estimate underestimates ||T||");
        estimate = *norm_estimate;
    }
    return ScfpProblem{std::move(domain_set), std::move(codomain_set), std::move(op), estimate};
}

Mapping build_L(const ScfpProblem& problem)
{
    auto shared = std::make_shared<const ScfpProblem>(problem);
    const double step = 1.0 / (problem.norm_estimate * problem.norm_estimate);
    return Mapping::from_function(
        NormedSpace(problem.op.cols(), NormKind::l2), "scfp_operator",
        [shared, step](const Vector& p) {
            const Vector tp = shared->op.apply(p);
            const Vector gap = project(shared->codomain_set, tp) - tp;
            return project(shared->domain_set, p + step * shared->op.apply_transpose(gap));
        });
}

Feasibility feasibility(const ScfpProblem& problem, const Vector& x)
{
    return {distance(problem.domain_set, x), distance(problem.codomain_set, problem.op.apply(x))};
}

ScfpResult solve_scfp(const ScfpProblem& problem, const IterationConfig& config, const Vector& p0)
{
    IterationTrace trace = krasnoselskij(build_L(problem), config, p0);
    const Feasibility f = feasibility(problem, trace.last());
    return {std::move(trace), f};
}

} // namespace kfix
