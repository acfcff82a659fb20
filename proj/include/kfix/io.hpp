#pragma once

#include "kfix/comparison.hpp"
#include "kfix/iteration.hpp"
#include "kfix/mapping.hpp"
#include "kfix/scfp.hpp"
#include "kfix/verifier.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kfix::io {

using json = nlohmann::ordered_json;

// Every parser throws UsageError whose message names the offending field by
// its dotted path, e.g. "mapping.alpha: expected a number".

json load_json_file(const std::filesystem::path& path);

Vector parse_vector(const json& j, const std::string& path);
/// {"kind":"linear","c":...} | {"kind":"power_scaled","c":...,"p":...}
ComparisonFn parse_zeta(const json& j, const std::string& path = "zeta");
/// {"kind":"scale","alpha":-0.5,"dim":3,"norm":"l1"} | {"kind":"quarter_turn"}
/// | {"kind":"affine","A":[[...]],"b":[...]}; optional "norm" (default l2) and
/// "shape":[rows,cols] for matrix_max.
Mapping parse_mapping(const json& j, const std::string& path = "mapping");
ContractionParams parse_params(const json& j, const std::string& path = "params");
/// {"kind":"box","lo":[..],"hi":[..]} | {"kind":"ball","center":[..],"radius":r}
/// | {"kind":"halfspace"|"hyperplane","normal":[..],"offset":o}
ConvexSet parse_set(const json& j, const std::string& path);
LinearOperator parse_operator(const json& j, const std::string& path = "T");

struct IterateProblem {
    Mapping map;
    std::optional<Mapping> second_map;
    Vector start;
    /// Explicit "lambda", else 1/(k+1) from "k", else absent.
    std::optional<double> lambda;
    IterationConfig config;
    bool picard = false;
};

/// {"mapping":{..}, "p0":[..], "lambda"|"k", "tol", "max_iters", "cycle_window",
///  "mode":"krasnoselskij"|"picard", "second_mapping":{..}}
IterateProblem parse_iterate_problem(const json& j);

struct VerifyProblem {
    ContractionParams params;
    ComparisonFn zeta;
    Mapping map;
    std::optional<PairSampler> sampler;
    std::vector<PointPair> pairs;
    VerifyOptions options;
};

/// {"mapping", "params":{a,b,c,k}, "zeta", "sampler":{"lo","hi","n_pairs","seed"},
///  "pairs":[{"p","q"}], "fix_tol", "max_witnesses"}; lo/hi may be scalars.
VerifyProblem parse_verify_problem(const json& j);

inline constexpr double kDefaultFeasibilityTol = 1e-6;

struct ScfpSpec {
    ScfpProblem problem;
    Vector start;
    std::optional<double> lambda;
    IterationConfig config;
    double feasibility_tol = kDefaultFeasibilityTol;
};

/// {"C":{..}, "Q":{..}, "T":[[..]], "norm_estimate", "p0", "lambda"|"k", "tol",
///  "max_iters", "feas_tol"}
ScfpSpec parse_scfp_problem(const json& j);

json to_json(const Vector& v);
/// {n_pairs, n_skipped, n_violations, worst_margin, witnesses:[{p,q,lhs,rhs}]};
/// worst_margin is null when every pair was skipped.
json report_to_json(const VerificationReport& report);
/// {x, iterations, dist_C, dist_Q, status}
json solution_to_json(const ScfpResult& result);

} // namespace kfix::io
