#include "kfix/mapping.hpp"

#include "kfix/errors.hpp"

#include <cmath>
#include <sstream>

namespace kfix {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

Mapping::Mapping(NormedSpace space, Kind kind) : space_(space), kind_(std::move(kind)) {}

Mapping Mapping::scale(NormedSpace space, double alpha)
{
    if (!std::isfinite(alpha))
        throw UsageError("scale mapping: alpha must be finite");
    return Mapping(space, Scale{alpha});
}

Mapping Mapping::quarter_turn(NormKind norm)
{
    if (norm == NormKind::matrix_max)
        throw UsageError("quarter_turn: matrix_max norm does not apply in the plane");
    return Mapping(NormedSpace(2, norm), QuarterTurn{});
}

Mapping Mapping::affine(NormedSpace space, std::vector<std::vector<double>> rows, Vector offset)
{
    const std::size_t d = space.dimension();
    if (rows.size() != d)
        throw UsageError("affine mapping: A must have " + std::to_string(d) + " rows");
    if (offset.dimension() != d)
        throw UsageError("affine mapping: b must have dimension " + std::to_string(d));
    std::vector<double> flat;
    flat.reserve(d * d);
    for (const auto& row : rows) {
        if (row.size() != d)
            throw UsageError("affine mapping: A must be square");
        for (double a : row) {
            if (!std::isfinite(a))
                throw UsageError("affine mapping: A has a non-finite entry");
            flat.push_back(a);
        }
    }
    return Mapping(space, Affine{std::move(flat), std::move(offset)});
}

Mapping Mapping::from_function(NormedSpace space, std::string name,
                               std::function<Vector(const Vector&)> fn)
{
    if (!fn)
        throw UsageError("mapping '" + name + "' has no function");
    return Mapping(space, Operator{std::move(name), std::move(fn)});
}

std::string Mapping::describe() const
{
    return std::visit(overloaded{
        [](const Scale& s) {
            std::ostringstream os;
            os << "scale(" << s.alpha << ")";
            return os.str();
        },
        [](const QuarterTurn&) { return std::string("quarter_turn"); },
        [](const Affine&) { return std::string("affine"); },
        [](const Operator& op) { return op.name; },
        [](const Averaged& a) {
            std::ostringstream os;
            os << "averaged(" << a.inner->describe() << ", " << a.lambda << ")";
            return os.str();
        },
    }, kind_);
}

Vector Mapping::operator()(const Vector& p) const
{
    if (p.dimension() != space_.dimension()) {
        throw UsageError("apply " + describe() + ": point of dimension " +
                         std::to_string(p.dimension()) + ", expected " +
                         std::to_string(space_.dimension()));
    }
    return std::visit(overloaded{
        [&](const Scale& s) { return s.alpha * p; },
        [&](const QuarterTurn&) { return Vector{-p[1], p[0]}; },
        [&](const Affine& a) {
            const std::size_t d = p.dimension();
            Vector out = a.offset;
            for (std::size_t i = 0; i < d; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < d; ++j)
                    s += a.matrix[i * d + j] * p[j];
                out[i] += s;
            }
            return out;
        },
        [&](const Operator& op) {
            Vector out = op.fn(p);
            if (out.dimension() != p.dimension())
                throw UsageError("mapping '" + op.name + "' changed the dimension");
            return out;
        },
        [&](const Averaged& a) { return affine_combine(a.lambda, p, (*a.inner)(p)); },
    }, kind_);
}

Vector apply(const Mapping& map, const Vector& p)
{
    return map(p);
}

Mapping averaged(const Mapping& map, double lambda)
{
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw UsageError("averaged: lambda must lie in (0, 1], got " + std::to_string(lambda));
    if (lambda == 1.0)
        return map;
    return Mapping(map.space(), Mapping::Averaged{std::make_shared<const Mapping>(map), lambda});
}

double fix_residual(const Mapping& map, const Vector& p)
{
    return map.space().norm(p - map(p));
}

namespace catalog {

Mapping matrix_quarter_shrink()
{
    return Mapping::scale(NormedSpace::matrix(2, 2), -0.25);
}

Mapping halving_reflection()
{
    return Mapping::scale(NormedSpace(3, NormKind::l1), -0.5);
}

Mapping rotation()
{
    return Mapping::quarter_turn(NormKind::l2);
}

Mapping affine_contraction()
{
    // A = [[0.5, 0.2], [-0.1, 0.3]], b chosen so that A (1,-1) + b = (1,-1).
    return Mapping::affine(NormedSpace(2, NormKind::l2), {{0.5, 0.2}, {-0.1, 0.3}},
                           Vector{0.7, -0.6});
}

std::vector<Entry> all()
{
    return {
        {"matrix_quarter_shrink", matrix_quarter_shrink(), Vector::zeros(4)},
        {"halving_reflection", halving_reflection(), Vector::zeros(3)},
        {"rotation", rotation(), Vector::zeros(2)},
        {"affine_contraction", affine_contraction(), Vector{1.0, -1.0}},
    };
}

} // namespace catalog

} // namespace kfix
