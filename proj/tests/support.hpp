#pragma once

// Hand-rolled property-test helpers: a for_all driver over seeded generators.

#include "gen.hpp"
#include "kfix/space.hpp"

#include <gtest/gtest.h>

#include <cstdint>

namespace kfix::testing {

/// Runs `property(gen, case_index)` `cases` times from a fixed seed.
template <class Property>
void for_all(std::size_t cases, std::uint64_t seed, Property&& property)
{
    Gen gen(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        SCOPED_TRACE(::testing::Message() << "case " << i << " (seed " << seed << ")");
        property(gen, i);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

inline void expect_vector_near(const Vector& actual, const Vector& expected, double tol)
{
    ASSERT_EQ(actual.dimension(), expected.dimension());
    for (std::size_t i = 0; i < actual.dimension(); ++i)
        EXPECT_NEAR(actual[i], expected[i], tol) << "component " << i;
}

} // namespace kfix::testing
