#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kfix {

/// Comparison function zeta: [0, inf) -> [0, inf), nondecreasing with
/// zeta^n(t) -> 0 for every t > 0. Consequently zeta(t) < t for t > 0 and
/// zeta(0) = 0.
///
/// Membership in that class cannot be decided numerically for an arbitrary
/// callable; construction only enforces zeta(0) = 0 and nonnegativity on the
/// default grid. Use check_membership() for a sampled certificate.
///
/// Evaluation is pure, so a ComparisonFn may be shared across threads.
class ComparisonFn {
public:
    enum class Kind { linear, power_scaled, custom };

    /// zeta(t) = c t, 0 <= c < 1.
    static ComparisonFn linear(double c);
    /// zeta(t) = c t^p, c >= 0, p > 0.
    static ComparisonFn power_scaled(double c, double p);
    /// Arbitrary user function; must be pure.
    static ComparisonFn custom(std::string name, std::function<double(double)> fn);

    /// Throws DomainError for t < 0 or NaN, or when the function yields a
    /// negative / NaN value.
    double operator()(double t) const;

    Kind kind() const noexcept { return kind_; }
    double coefficient() const noexcept { return c_; }
    double exponent() const noexcept { return p_; }
    const std::string& name() const noexcept { return name_; }

private:
    ComparisonFn(Kind kind, double c, double p, std::string name,
                 std::function<double(double)> fn);
    double raw(double t) const;

    Kind kind_;
    double c_ = 0.0;
    double p_ = 1.0;
    std::string name_;
    std::shared_ptr<const std::function<double(double)>> fn_;
};

double eval(const ComparisonFn& zeta, double t);

/// n-fold composition; zeta^0(t) = t.
double iterate_zeta(const ComparisonFn& zeta, double t, std::size_t n);

struct Violation {
    double t = 0.0;
    double detail = 0.0;
};

/// Sampled certificate for class membership. It is evidence on a finite grid,
/// never a proof.
struct MembershipReport {
    bool nondecreasing_ok = true;
    bool iterates_vanish_ok = true;
    bool strict_below_identity_ok = true;
    /// Largest violation over all three checks; absent iff every flag holds.
    std::optional<Violation> worst_violation;

    bool passed() const noexcept
    {
        return nondecreasing_ok && iterates_vanish_ok && strict_below_identity_ok;
    }
    static constexpr const char* certificate_kind = "sampled certificate";
};

inline constexpr std::size_t kDefaultGridSize = 32;
inline constexpr double kDefaultGridLo = 1e-6;
inline constexpr double kDefaultGridHi = 1e3;
inline constexpr std::size_t kDefaultMembershipIters = 200;
inline constexpr double kDefaultMembershipTol = 1e-9;
inline constexpr double kMonotoneSlack = 1e-12;

/// 32 log-spaced points in [1e-6, 1e3].
std::vector<double> default_grid();

/// The grid is sorted internally. Violation details:
///  - nondecreasing: zeta(t_i) - zeta(t_{i+1}) reported at t_i;
///  - vanish: zeta^{n_max}(t) reported at t;
///  - below identity: zeta(t) - t reported at t.
/// Throws UsageError for an empty grid, nonpositive entries, n_max == 0 or tol <= 0.
MembershipReport check_membership(const ComparisonFn& zeta, std::span<const double> grid,
                                  std::size_t n_max = kDefaultMembershipIters,
                                  double tol = kDefaultMembershipTol);

} // namespace kfix
