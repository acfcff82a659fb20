#include "kfix/comparison.hpp"
#include "kfix/errors.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace kfix;

TEST(ComparisonFn, LinearTwoThirdsAtThree)
{
    EXPECT_DOUBLE_EQ(eval(ComparisonFn::linear(2.0 / 3.0), 3.0), 2.0);
}

TEST(ComparisonFn, OneFourteenthAtStatedProduct)
{
    EXPECT_NEAR(eval(ComparisonFn::linear(1.0 / 14.0), 13.67664), 0.9769, 1e-4);
}

TEST(ComparisonFn, VanishesAtZero)
{
    EXPECT_EQ(eval(ComparisonFn::linear(0.5), 0.0), 0.0);
    EXPECT_EQ(eval(ComparisonFn::power_scaled(0.5, 2.0), 0.0), 0.0);
}

TEST(ComparisonFn, NegativeArgumentIsDomainError)
{
    const auto zeta = ComparisonFn::linear(0.5);
    EXPECT_THROW(eval(zeta, -1.0), DomainError);
    EXPECT_THROW(eval(zeta, std::nan("")), DomainError);
}

TEST(ComparisonFn, ConstructionRejectsNonzeroAtOrigin)
{
    EXPECT_THROW(ComparisonFn::custom("shifted", [](double t) { return t / 2 + 1; }), DomainError);
    EXPECT_THROW(ComparisonFn::custom("negative", [](double t) { return -t; }), DomainError);
    EXPECT_THROW(ComparisonFn::linear(1.0), UsageError);
    EXPECT_THROW(ComparisonFn::linear(-0.1), UsageError);
    EXPECT_THROW(ComparisonFn::power_scaled(0.5, 0.0), UsageError);
}

TEST(IterateZeta, LinearComposition)
{
    EXPECT_NEAR(iterate_zeta(ComparisonFn::linear(2.0 / 3.0), 9.0, 3), 8.0 / 3.0, 1e-14);
    EXPECT_NEAR(iterate_zeta(ComparisonFn::linear(1.0 / 14.0), 14.0, 2), 1.0 / 14.0, 1e-15);
}

TEST(IterateZeta, ZeroFoldIsIdentity)
{
    EXPECT_EQ(iterate_zeta(ComparisonFn::linear(0.3), 5.0, 0), 5.0);
}

TEST(CheckMembership, TwoThirdsPasses)
{
    const std::vector<double> grid{0.1, 1, 10};
    const auto report = check_membership(ComparisonFn::linear(2.0 / 3.0), grid, 50, 1e-6);
    EXPECT_TRUE(report.nondecreasing_ok);
    EXPECT_TRUE(report.iterates_vanish_ok);
    EXPECT_TRUE(report.strict_below_identity_ok);
    EXPECT_FALSE(report.worst_violation.has_value());
}

TEST(CheckMembership, IdentityFails)
{
    const auto identity = ComparisonFn::custom("identity", [](double t) { return t; });
    const std::vector<double> grid{1};
    const auto report = check_membership(identity, grid, 50, 1e-6);
    EXPECT_FALSE(report.strict_below_identity_ok);
    EXPECT_FALSE(report.iterates_vanish_ok);
    ASSERT_TRUE(report.worst_violation.has_value());
    EXPECT_EQ(report.worst_violation->t, 1.0);
}

TEST(CheckMembership, OneFourteenthPasses)
{
    // 100 / 14^10 ~ 3.5e-10 < 1e-6.
    const std::vector<double> grid{1, 100};
    const auto report = check_membership(ComparisonFn::linear(1.0 / 14.0), grid, 10, 1e-6);
    EXPECT_TRUE(report.passed());
    EXPECT_FALSE(report.worst_violation.has_value());
}

TEST(CheckMembership, DecreasingFunctionFlagged)
{
    // Pure bump that is not monotone: fails only the nondecreasing check.
    const auto bump = ComparisonFn::custom("bump", [](double t) { return t < 1 ? t / 2 : 0.25 / t; });
    const std::vector<double> grid{0.5, 1, 2, 4};
    const auto report = check_membership(bump, grid, 200, 1e-9);
    EXPECT_FALSE(report.nondecreasing_ok);
    EXPECT_TRUE(report.strict_below_identity_ok);
    ASSERT_TRUE(report.worst_violation.has_value());
}

TEST(CheckMembership, UsageErrors)
{
    const auto zeta = ComparisonFn::linear(0.5);
    EXPECT_THROW(check_membership(zeta, std::vector<double>{}, 10, 1e-6), UsageError);
    EXPECT_THROW(check_membership(zeta, std::vector<double>{0.0, 1.0}, 10, 1e-6), UsageError);
    EXPECT_THROW(check_membership(zeta, std::vector<double>{1.0}, 0, 1e-6), UsageError);
    EXPECT_THROW(check_membership(zeta, std::vector<double>{1.0}, 10, 0.0), UsageError);
}

TEST(CheckMembership, DefaultGridCoversRange)
{
    const auto grid = default_grid();
    ASSERT_EQ(grid.size(), 32u);
    EXPECT_NEAR(grid.front(), 1e-6, 1e-18);
    EXPECT_NEAR(grid.back(), 1e3, 1e-9);
    EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
    EXPECT_TRUE(check_membership(ComparisonFn::linear(0.8), grid).passed());
}

TEST(ComparisonProperties, LinearIsExactAndCertified)
{
    kfix::testing::for_all(200, 11, [](kfix::testing::Gen& gen, std::size_t) {
        const double c = gen.uniform(0.0, 0.95);
        const auto zeta = ComparisonFn::linear(c);
        const double t = gen.uniform(1e-9, 1e6);
        EXPECT_EQ(eval(zeta, t), c * t);
        EXPECT_EQ(eval(zeta, 0.0), 0.0);
        // c^n * 1e3 < 1e-9 needs n > 12 / -log10(c).
        EXPECT_TRUE(check_membership(zeta, default_grid(), 1000, 1e-9).passed());
    });
}

TEST(ComparisonProperties, CompositionLaw)
{
    kfix::testing::for_all(100, 12, [](kfix::testing::Gen& gen, std::size_t i) {
        const auto zeta = i % 2 ? ComparisonFn::linear(gen.uniform(0.0, 0.99))
                                : ComparisonFn::power_scaled(gen.uniform(0.1, 0.9), gen.uniform(1.0, 2.0));
        const double t = gen.uniform(0.0, 100.0);
        const std::size_t m = gen.index(0, 20);
        const std::size_t n = gen.index(0, 20);
        EXPECT_EQ(iterate_zeta(zeta, t, m + n), iterate_zeta(zeta, iterate_zeta(zeta, t, n), m));
    });
}
