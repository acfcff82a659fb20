#include "kfix/space.hpp"

#include "kfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kfix {

Vector::Vector(std::vector<double> components) : values_(std::move(components))
{
    if (values_.empty())
        throw UsageError("vector dimension must be at least 1");
}

Vector::Vector(std::initializer_list<double> components)
    : Vector(std::vector<double>(components))
{
}

Vector Vector::zeros(std::size_t dimension)
{
    return Vector(std::vector<double>(dimension, 0.0));
}

Vector Vector::filled(std::size_t dimension, double value)
{
    return Vector(std::vector<double>(dimension, value));
}

bool Vector::all_finite() const noexcept
{
    return std::all_of(values_.begin(), values_.end(),
                       [](double x) { return std::isfinite(x); });
}

void require_same_dimension(const Vector& u, const Vector& v, std::string_view where)
{
    if (u.dimension() != v.dimension()) {
        throw UsageError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(u.dimension()) + " vs " +
                         std::to_string(v.dimension()) + ")");
    }
}

Vector operator+(const Vector& u, const Vector& v)
{
    require_same_dimension(u, v, "vector addition");
    Vector out = u;
    for (std::size_t i = 0; i < out.dimension(); ++i)
        out[i] += v[i];
    return out;
}

Vector operator-(const Vector& u, const Vector& v)
{
    require_same_dimension(u, v, "vector subtraction");
    Vector out = u;
    for (std::size_t i = 0; i < out.dimension(); ++i)
        out[i] -= v[i];
    return out;
}

Vector operator-(const Vector& v)
{
    return -1.0 * v;
}

Vector operator*(double alpha, const Vector& v)
{
    Vector out = v;
    for (std::size_t i = 0; i < out.dimension(); ++i)
        out[i] *= alpha;
    return out;
}

double dot(const Vector& u, const Vector& v)
{
    require_same_dimension(u, v, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < u.dimension(); ++i)
        s += u[i] * v[i];
    return s;
}

Vector affine_combine(double lambda, const Vector& p, const Vector& q)
{
    require_same_dimension(p, q, "affine_combine");
    const double keep = 1.0 - lambda;
    Vector out = p;
    for (std::size_t i = 0; i < out.dimension(); ++i)
        out[i] = keep * p[i] + lambda * q[i];
    return out;
}

std::string_view to_string(NormKind kind)
{
    switch (kind) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
    case NormKind::matrix_max: return "matrix_max";
    }
    return "?";
}

NormKind parse_norm_kind(std::string_view name)
{
    if (name == "l1") return NormKind::l1;
    if (name == "l2") return NormKind::l2;
    if (name == "linf") return NormKind::linf;
    if (name == "matrix_max") return NormKind::matrix_max;
    throw UsageError("unknown norm kind '" + std::string(name) + "'");
}

NormedSpace::NormedSpace(std::size_t dimension, NormKind kind)
    : dimension_(dimension), kind_(kind)
{
    if (dimension == 0)
        throw UsageError("space dimension must be at least 1");
    if (kind == NormKind::matrix_max) {
        // Square shape when the caller did not give one.
        const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(dimension))));
        if (side * side != dimension)
            throw UsageError("matrix_max norm needs rows*cols = dimension; use NormedSpace::matrix");
        rows_ = cols_ = side;
    }
}

NormedSpace NormedSpace::matrix(std::size_t rows, std::size_t cols)
{
    if (rows == 0 || cols == 0)
        throw UsageError("matrix shape must be nonempty");
    NormedSpace space(rows * cols, NormKind::l2);
    space.kind_ = NormKind::matrix_max;
    space.rows_ = rows;
    space.cols_ = cols;
    return space;
}

double NormedSpace::norm(const Vector& v) const
{
    if (v.dimension() != dimension_) {
        throw UsageError("norm: vector of dimension " + std::to_string(v.dimension()) +
                         " in space of dimension " + std::to_string(dimension_));
    }
    if (!v.all_finite())
        return std::numeric_limits<double>::infinity();
    const auto xs = v.values();
    switch (kind_) {
    case NormKind::l1: {
        double s = 0.0;
        for (double x : xs) s += std::abs(x);
        return s;
    }
    case NormKind::l2: {
        // Scaled accumulation avoids overflow for large components.
        double scale = 0.0;
        for (double x : xs) scale = std::max(scale, std::abs(x));
        if (scale == 0.0 || !std::isfinite(scale)) return scale;
        double s = 0.0;
        for (double x : xs) {
            const double r = x / scale;
            s += r * r;
        }
        return scale * std::sqrt(s);
    }
    case NormKind::linf:
    case NormKind::matrix_max: {
        double m = 0.0;
        for (double x : xs) m = std::max(m, std::abs(x));
        return m;
    }
    }
    return 0.0;
}

double norm(const NormedSpace& space, const Vector& v)
{
    return space.norm(v);
}

} // namespace kfix
