#pragma once

#include "kfix/space.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace kfix {

/// Self-map R of a NormedSpace. Immutable after construction; apply() is
/// pure, so a Mapping may be evaluated from several threads at once.
class Mapping {
public:
    /// R p = alpha p.
    struct Scale {
        double alpha;
    };
    /// R(x, y) = (-y, x). Plane only.
    struct QuarterTurn {};
    /// R p = A p + b with A square, row-major.
    struct Affine {
        std::vector<double> matrix;
        Vector offset;
    };
    /// Opaque callable, e.g. the split-feasibility operator.
    struct Operator {
        std::string name;
        std::function<Vector(const Vector&)> fn;
    };
    /// R_lambda p = (1 - lambda) p + lambda R p.
    struct Averaged {
        std::shared_ptr<const Mapping> inner;
        double lambda;
    };
    using Kind = std::variant<Scale, QuarterTurn, Affine, Operator, Averaged>;

    static Mapping scale(NormedSpace space, double alpha);
    static Mapping quarter_turn(NormKind norm = NormKind::l2);
    static Mapping affine(NormedSpace space, std::vector<std::vector<double>> rows, Vector offset);
    static Mapping from_function(NormedSpace space, std::string name,
                                 std::function<Vector(const Vector&)> fn);

    const NormedSpace& space() const noexcept { return space_; }
    std::size_t dimension() const noexcept { return space_.dimension(); }
    const Kind& kind() const noexcept { return kind_; }
    std::string describe() const;

    /// Throws UsageError on dimension mismatch.
    Vector operator()(const Vector& p) const;

private:
    Mapping(NormedSpace space, Kind kind);
    friend Mapping averaged(const Mapping& map, double lambda);

    NormedSpace space_;
    Kind kind_;
};

Vector apply(const Mapping& map, const Vector& p);

/// The averaged mapping R_lambda, 0 < lambda <= 1. lambda = 1 returns `map`.
/// Fix(R_lambda) = Fix(R), and p - R_lambda p = lambda (p - R p).
Mapping averaged(const Mapping& map, double lambda);

/// ||p - R p|| in the map's norm.
double fix_residual(const Mapping& map, const Vector& p);

namespace catalog {

/// R(A) = -A/4 on 2x2 matrices under the max-entry norm; fixed point 0.
Mapping matrix_quarter_shrink();
/// R(z) = -z/2 on R^3 under the l1 norm; fixed point 0.
Mapping halving_reflection();
/// R(x, y) = (-y, x) on the Euclidean plane; fixed point 0.
Mapping rotation();
/// A planar affine contraction with fixed point (1, -1); l2 norm.
Mapping affine_contraction();

struct Entry {
    std::string name;
    Mapping map;
    Vector fixed_point;
};

std::vector<Entry> all();

} // namespace catalog

} // namespace kfix
