#include "kfix/errors.hpp"
#include "kfix/io.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace kfix;
using kfix::io::json;

namespace {

std::string usage_message(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const UsageError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(ParseMapping, Scale)
{
    const auto map = io::parse_mapping(json::parse(R"({"kind":"scale","alpha":-0.5,"dim":3,"norm":"l1"})"));
    EXPECT_EQ(map.dimension(), 3u);
    EXPECT_EQ(map.space().norm_kind(), NormKind::l1);
    EXPECT_EQ(apply(map, Vector{3, 2, 1}), (Vector{-1.5, -1, -0.5}));
}

TEST(ParseMapping, MatrixShape)
{
    const auto map = io::parse_mapping(
        json::parse(R"({"kind":"scale","alpha":-0.25,"norm":"matrix_max","shape":[2,2]})"));
    EXPECT_EQ(map.dimension(), 4u);
    EXPECT_EQ(map.space().norm_kind(), NormKind::matrix_max);
}

TEST(ParseMapping, QuarterTurnAndAffine)
{
    EXPECT_EQ(io::parse_mapping(json::parse(R"({"kind":"quarter_turn"})")).dimension(), 2u);
    const auto affine = io::parse_mapping(json::parse(R"({"kind":"affine","A":[[0,1],[1,0]],"b":[1,2]})"));
    EXPECT_EQ(apply(affine, Vector{3, 4}), (Vector{5, 5}));
}

TEST(ParseMapping, ErrorsNameTheField)
{
    EXPECT_EQ(usage_message([] { io::parse_mapping(json::parse(R"({"kind":"scale","alpha":"x","dim":3})")); })
                  .rfind("mapping.alpha", 0),
              0u);
    EXPECT_EQ(usage_message([] { io::parse_mapping(json::parse(R"({"kind":"spiral"})")); }).rfind("mapping.kind", 0),
              0u);
    EXPECT_NE(usage_message([] { io::parse_mapping(json::parse(R"({"kind":"affine","A":[[1]],"b":[1,2]})")); }),
              "");
}

TEST(ParseParams, SumMustStayBelowOne)
{
    EXPECT_NO_THROW(io::parse_params(json::parse(R"({"a":0.3,"b":0.3,"c":0.3,"k":0.25})")));
    EXPECT_THROW(io::parse_params(json::parse(R"({"a":0.5,"b":0.3,"c":0.3})")), UsageError);
    EXPECT_EQ(usage_message([] { io::parse_params(json::parse(R"({"a":0.1,"c":0.3})")); }).rfind("params.b", 0), 0u);
}

TEST(ParseZeta, Kinds)
{
    EXPECT_EQ(eval(io::parse_zeta(json::parse(R"({"kind":"linear","c":0.5})")), 4.0), 2.0);
    EXPECT_EQ(eval(io::parse_zeta(json::parse(R"({"kind":"power_scaled","c":0.5,"p":2})")), 4.0), 8.0);
    EXPECT_THROW(io::parse_zeta(json::parse(R"({"kind":"linear","c":1.0})")), UsageError);
}

TEST(ParseIterate, LambdaFromK)
{
    const auto problem = io::parse_iterate_problem(json::parse(
        R"({"mapping":{"kind":"scale","alpha":-0.5,"dim":3},"p0":[3,2,1],"k":1,"tol":1e-12,"max_iters":50})"));
    ASSERT_TRUE(problem.lambda.has_value());
    EXPECT_EQ(*problem.lambda, 0.5);
    EXPECT_EQ(problem.config.tol, 1e-12);
    EXPECT_EQ(problem.config.max_iters, 50u);
    EXPECT_FALSE(problem.picard);
    EXPECT_THROW(io::parse_iterate_problem(json::parse(
                     R"({"mapping":{"kind":"quarter_turn"},"p0":[1,1],"k":1,"lambda":0.5})")),
                 UsageError);
    EXPECT_THROW(io::parse_iterate_problem(json::parse(R"({"mapping":{"kind":"quarter_turn"},"p0":[1,1,1]})")),
                 UsageError);
}

TEST(ParseIterate, PicardMode)
{
    const auto problem = io::parse_iterate_problem(
        json::parse(R"({"mapping":{"kind":"quarter_turn"},"p0":[0.5,1],"mode":"picard","cycle_window":8})"));
    EXPECT_TRUE(problem.picard);
    EXPECT_EQ(problem.config.cycle_window, 8u);
}

TEST(ParseVerify, ScalarBoxBounds)
{
    const auto problem = io::parse_verify_problem(json::parse(R"({
        "mapping":{"kind":"scale","alpha":-0.5,"dim":3,"norm":"l1"},
        "params":{"a":0.125,"b":0.5,"c":0.125,"k":0},
        "zeta":{"kind":"linear","c":0.07142857142857142},
        "sampler":{"lo":-5,"hi":5,"n_pairs":10,"seed":3},
        "pairs":[{"p":[2,2,2],"q":[-2,-2,-2]}]})"));
    ASSERT_TRUE(problem.sampler.has_value());
    EXPECT_EQ(problem.sampler->lo, Vector::filled(3, -5));
    EXPECT_EQ(problem.pairs.size(), 1u);
}

TEST(ParseScfp, DefaultsAndSets)
{
    const auto spec = io::parse_scfp_problem(json::parse(R"({
        "C":{"kind":"ball","center":[0,0],"radius":1},
        "Q":{"kind":"halfspace","normal":[1,0],"offset":0.5},
        "T":[[1,0],[0,1]]})"));
    EXPECT_EQ(spec.start, Vector::zeros(2));
    EXPECT_EQ(spec.feasibility_tol, io::kDefaultFeasibilityTol);
    EXPECT_NEAR(spec.problem.norm_estimate, 1.01, 1e-9);
    EXPECT_THROW(io::parse_scfp_problem(json::parse(R"({"C":{"kind":"ball","center":[0,0],"radius":-1},
        "Q":{"kind":"ball","center":[0,0],"radius":1},"T":[[1,0],[0,1]]})")),
                 UsageError);
    EXPECT_EQ(usage_message([] {
                  io::parse_scfp_problem(json::parse(R"({"C":{"kind":"box","lo":[0,0]},
        "Q":{"kind":"ball","center":[0,0],"radius":1},"T":[[1,0],[0,1]]})"));
              }).rfind("C.hi", 0),
              0u);
}

TEST(ToJson, ReportShape)
{
    VerificationReport report;
    report.n_pairs = 2;
    report.n_skipped = 2;
    const auto j = io::report_to_json(report);
    EXPECT_EQ(j.dump(), R"({"n_pairs":2,"n_skipped":2,"n_violations":0,"worst_margin":null,"witnesses":[]})");
}
