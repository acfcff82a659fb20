#include "kfix/comparison.hpp"

#include "kfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kfix {

ComparisonFn::ComparisonFn(Kind kind, double c, double p, std::string name,
                           std::function<double(double)> fn)
    : kind_(kind), c_(c), p_(p), name_(std::move(name))
{
    if (fn)
        fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));

    const double at_zero = raw(0.0);
    if (at_zero != 0.0)
        throw DomainError("comparison function '" + name_ + "' must satisfy zeta(0) = 0");
    for (double t : default_grid()) {
        const double v = raw(t);
        if (!(v >= 0.0)) {
            throw DomainError("comparison function '" + name_ +
                              "' is negative or NaN at t = " + std::to_string(t));
        }
    }
}

ComparisonFn ComparisonFn::linear(double c)
{
    if (!(c >= 0.0 && c < 1.0))
        throw UsageError("linear comparison function needs 0 <= c < 1, got " + std::to_string(c));
    return ComparisonFn(Kind::linear, c, 1.0, "linear", {});
}

ComparisonFn ComparisonFn::power_scaled(double c, double p)
{
    if (!(c >= 0.0) || !std::isfinite(c))
        throw UsageError("power_scaled comparison function needs c >= 0");
    if (!(p > 0.0) || !std::isfinite(p))
        throw UsageError("power_scaled comparison function needs p > 0");
    return ComparisonFn(Kind::power_scaled, c, p, "power_scaled", {});
}

ComparisonFn ComparisonFn::custom(std::string name, std::function<double(double)> fn)
{
    if (!fn)
        throw UsageError("custom comparison function is empty");
    return ComparisonFn(Kind::custom, 0.0, 1.0, std::move(name), std::move(fn));
}

double ComparisonFn::raw(double t) const
{
    switch (kind_) {
    case Kind::linear: return c_ * t;
    case Kind::power_scaled: return t == 0.0 ? 0.0 : c_ * std::pow(t, p_);
    case Kind::custom: return (*fn_)(t);
    }
    return 0.0;
}

double ComparisonFn::operator()(double t) const
{
    if (!(t >= 0.0))
        throw DomainError("comparison function evaluated at t = " + std::to_string(t) +
                          " outside [0, inf)");
    const double v = raw(t);
    if (!(v >= 0.0))
        throw DomainError("comparison function '" + name_ + "' returned a negative or NaN value");
    return v;
}

double eval(const ComparisonFn& zeta, double t)
{
    return zeta(t);
}

double iterate_zeta(const ComparisonFn& zeta, double t, std::size_t n)
{
    if (!(t >= 0.0))
        throw DomainError("iterate_zeta: t must be nonnegative");
    for (std::size_t i = 0; i < n; ++i)
        t = zeta(t);
    return t;
}

std::vector<double> default_grid()
{
    std::vector<double> grid(kDefaultGridSize);
    const double lo = std::log10(kDefaultGridLo);
    const double hi = std::log10(kDefaultGridHi);
    for (std::size_t i = 0; i < kDefaultGridSize; ++i) {
        const double s = double(i) / double(kDefaultGridSize - 1);
        grid[i] = std::pow(10.0, lo + s * (hi - lo));
    }
    return grid;
}

MembershipReport check_membership(const ComparisonFn& zeta, std::span<const double> grid,
                                  std::size_t n_max, double tol)
{
    if (grid.empty())
        throw UsageError("check_membership: grid is empty");
    if (n_max == 0)
        throw UsageError("check_membership: n_max must be at least 1");
    if (!(tol > 0.0))
        throw UsageError("check_membership: tol must be positive");

    std::vector<double> ts(grid.begin(), grid.end());
    for (double t : ts) {
        if (!(t > 0.0))
            throw UsageError("check_membership: grid entries must be positive");
    }
    std::sort(ts.begin(), ts.end());

    MembershipReport report;
    auto note = [&report](double t, double detail) {
        if (!report.worst_violation || detail > report.worst_violation->detail)
            report.worst_violation = Violation{t, detail};
    };

    std::vector<double> values(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        values[i] = zeta(ts[i]);

    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (values[i] > values[i + 1] + kMonotoneSlack) {
            report.nondecreasing_ok = false;
            note(ts[i], values[i] - values[i + 1]);
        }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double tail = iterate_zeta(zeta, ts[i], n_max);
        if (!(tail < tol)) {
            report.iterates_vanish_ok = false;
            note(ts[i], tail);
        }
        if (!(values[i] < ts[i])) {
            report.strict_below_identity_ok = false;
            note(ts[i], values[i] - ts[i]);
        }
    }
    return report;
}

} // namespace kfix
