#include "kfix/io.hpp"

#include "kfix/errors.hpp"

#include <cmath>
#include <fstream>

namespace kfix::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw UsageError(path + ": " + message);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const json& member(const json& j, const std::string& path, const std::string& key)
{
    if (!j.is_object())
        fail(path.empty() ? "document" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(join(path, key), "missing field");
    return *it;
}

const json* optional_member(const json& j, const std::string& path, const std::string& key)
{
    if (!j.is_object())
        fail(path.empty() ? "document" : path, "expected an object");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number())
        fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        fail(path, "expected a finite number");
    return x;
}

std::size_t count(const json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& path)
{
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

double get_number(const json& j, const std::string& path, const std::string& key)
{
    return number(member(j, path, key), join(path, key));
}

std::vector<std::vector<double>> matrix(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty())
        fail(path, "expected a nonempty array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        const std::string row_path = index(path, i);
        if (!row.is_array() || row.empty())
            fail(row_path, "expected a nonempty array of numbers");
        std::vector<double> values;
        for (std::size_t k = 0; k < row.size(); ++k)
            values.push_back(number(row[k], index(row_path, k)));
        if (!rows.empty() && values.size() != rows.front().size())
            fail(row_path, "row length differs from the first row");
        rows.push_back(std::move(values));
    }
    return rows;
}

NormedSpace parse_space(const json& j, const std::string& path, std::size_t dimension)
{
    NormKind kind = NormKind::l2;
    if (const json* norm = optional_member(j, path, "norm")) {
        try {
            kind = parse_norm_kind(text(*norm, join(path, "norm")));
        } catch (const UsageError& e) {
            fail(join(path, "norm"), e.what());
        }
    }
    if (kind != NormKind::matrix_max)
        return NormedSpace(dimension, kind);
    if (const json* shape = optional_member(j, path, "shape")) {
        const std::string shape_path = join(path, "shape");
        if (!shape->is_array() || shape->size() != 2)
            fail(shape_path, "expected [rows, cols]");
        const std::size_t rows = count((*shape)[0], index(shape_path, 0));
        const std::size_t cols = count((*shape)[1], index(shape_path, 1));
        if (rows * cols != dimension)
            fail(shape_path, "rows*cols must equal the dimension");
        return NormedSpace::matrix(rows, cols);
    }
    try {
        return NormedSpace(dimension, kind);
    } catch (const UsageError& e) {
        fail(join(path, "shape"), e.what());
    }
}

std::optional<double> parse_lambda(const json& j)
{
    const json* lambda = optional_member(j, "", "lambda");
    const json* k = optional_member(j, "", "k");
    if (lambda && k)
        fail("lambda", "give either lambda or k, not both");
    if (lambda)
        return number(*lambda, "lambda");
    if (k) {
        const double kv = number(*k, "k");
        if (kv < 0.0)
            fail("k", "must be nonnegative");
        return lambda_from_k(kv);
    }
    return std::nullopt;
}

void parse_config(const json& j, IterationConfig& config)
{
    if (const json* tol = optional_member(j, "", "tol"))
        config.tol = number(*tol, "tol");
    if (const json* it = optional_member(j, "", "max_iters"))
        config.max_iters = count(*it, "max_iters");
    if (const json* w = optional_member(j, "", "cycle_window"))
        config.cycle_window = count(*w, "cycle_window");
}

template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const UsageError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0)
            throw;
        fail(path, what);
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

} // namespace

json load_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open problem file '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("problem file '" + path.string() + "' is not valid JSON: " + e.what());
    }
}

Vector parse_vector(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty())
        fail(path, "expected a nonempty array of numbers");
    std::vector<double> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        values.push_back(number(j[i], index(path, i)));
    return Vector(std::move(values));
}

ComparisonFn parse_zeta(const json& j, const std::string& path)
{
    const std::string kind = text(member(j, path, "kind"), join(path, "kind"));
    if (kind == "linear") {
        const double c = get_number(j, path, "c");
        return with_path(join(path, "c"), [&] { return ComparisonFn::linear(c); });
    }
    if (kind == "power_scaled") {
        const double c = get_number(j, path, "c");
        const double p = get_number(j, path, "p");
        return with_path(path, [&] { return ComparisonFn::power_scaled(c, p); });
    }
    fail(join(path, "kind"), "unknown comparison function kind '" + kind + "'");
}

Mapping parse_mapping(const json& j, const std::string& path)
{
    const std::string kind = text(member(j, path, "kind"), join(path, "kind"));
    if (kind == "scale") {
        const double alpha = get_number(j, path, "alpha");
        std::size_t dim = 0;
        if (const json* d = optional_member(j, path, "dim")) {
            dim = count(*d, join(path, "dim"));
        } else if (const json* shape = optional_member(j, path, "shape")) {
            if (!shape->is_array() || shape->size() != 2)
                fail(join(path, "shape"), "expected [rows, cols]");
            dim = count((*shape)[0], join(path, "shape[0]")) *
                  count((*shape)[1], join(path, "shape[1]"));
        } else {
            fail(join(path, "dim"), "missing field");
        }
        if (dim == 0)
            fail(join(path, "dim"), "must be at least 1");
        return Mapping::scale(parse_space(j, path, dim), alpha);
    }
    if (kind == "quarter_turn") {
        const NormedSpace space = parse_space(j, path, 2);
        return with_path(join(path, "norm"), [&] { return Mapping::quarter_turn(space.norm_kind()); });
    }
    if (kind == "affine") {
        auto rows = matrix(member(j, path, "A"), join(path, "A"));
        Vector b = parse_vector(member(j, path, "b"), join(path, "b"));
        const NormedSpace space = parse_space(j, path, b.dimension());
        return with_path(join(path, "A"),
                         [&] { return Mapping::affine(space, std::move(rows), std::move(b)); });
    }
    fail(join(path, "kind"), "unknown mapping kind '" + kind + "'");
}

ContractionParams parse_params(const json& j, const std::string& path)
{
    ContractionParams params{get_number(j, path, "a"), get_number(j, path, "b"),
                             get_number(j, path, "c"), 0.0};
    if (const json* k = optional_member(j, path, "k"))
        params.k = number(*k, join(path, "k"));
    with_path(path, [&] { params.validate(); });
    return params;
}

ConvexSet parse_set(const json& j, const std::string& path)
{
    const std::string kind = text(member(j, path, "kind"), join(path, "kind"));
    if (kind == "box") {
        Vector lo = parse_vector(member(j, path, "lo"), join(path, "lo"));
        Vector hi = parse_vector(member(j, path, "hi"), join(path, "hi"));
        return with_path(path, [&] { return ConvexSet::box(std::move(lo), std::move(hi)); });
    }
    if (kind == "ball") {
        Vector center = parse_vector(member(j, path, "center"), join(path, "center"));
        const double radius = get_number(j, path, "radius");
        return with_path(join(path, "radius"),
                         [&] { return ConvexSet::ball(std::move(center), radius); });
    }
    if (kind == "halfspace" || kind == "hyperplane") {
        Vector normal = parse_vector(member(j, path, "normal"), join(path, "normal"));
        const double offset = get_number(j, path, "offset");
        return with_path(join(path, "normal"), [&] {
            return kind == "halfspace" ? ConvexSet::halfspace(std::move(normal), offset)
                                       : ConvexSet::hyperplane(std::move(normal), offset);
        });
    }
    fail(join(path, "kind"), "unknown set kind '" + kind + "'");
}

LinearOperator parse_operator(const json& j, const std::string& path)
{
    const auto rows = matrix(j, path);
    return with_path(path, [&] { return LinearOperator::from_rows(rows); });
}

IterateProblem parse_iterate_problem(const json& j)
{
    Mapping map = parse_mapping(member(j, "", "mapping"), "mapping");
    std::optional<Mapping> second;
    if (const json* s = optional_member(j, "", "second_mapping"))
        second = parse_mapping(*s, "second_mapping");
    Vector start = parse_vector(member(j, "", "p0"), "p0");
    if (start.dimension() != map.dimension())
        fail("p0", "dimension does not match the mapping");

    IterateProblem problem{std::move(map), std::move(second), std::move(start), parse_lambda(j),
                           IterationConfig{}, false};
    parse_config(j, problem.config);
    if (const json* mode = optional_member(j, "", "mode")) {
        const std::string m = text(*mode, "mode");
        if (m == "picard")
            problem.picard = true;
        else if (m != "krasnoselskij")
            fail("mode", "expected \"krasnoselskij\" or \"picard\"");
    }
    return problem;
}

VerifyProblem parse_verify_problem(const json& j)
{
    Mapping map = parse_mapping(member(j, "", "mapping"), "mapping");
    ContractionParams params = parse_params(member(j, "", "params"), "params");
    ComparisonFn zeta = parse_zeta(member(j, "", "zeta"), "zeta");
    const std::size_t d = map.dimension();

    std::optional<PairSampler> sampler;
    if (const json* s = optional_member(j, "", "sampler")) {
        auto bound = [&](const char* key) {
            const json& b = member(*s, "sampler", key);
            const std::string p = join("sampler", key);
            if (b.is_number())
                return Vector::filled(d, number(b, p));
            Vector v = parse_vector(b, p);
            if (v.dimension() != d)
                fail(p, "dimension does not match the mapping");
            return v;
        };
        PairSampler ps{bound("lo"), bound("hi"),
                       count(member(*s, "sampler", "n_pairs"), "sampler.n_pairs"), 0};
        if (const json* seed = optional_member(*s, "sampler", "seed"))
            ps.seed = count(*seed, "sampler.seed");
        with_path("sampler", [&] { ps.validate(); });
        sampler = std::move(ps);
    }

    std::vector<PointPair> pairs;
    if (const json* list = optional_member(j, "", "pairs")) {
        if (!list->is_array())
            fail("pairs", "expected an array of {\"p\":[..],\"q\":[..]}");
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string p = index("pairs", i);
            Vector a = parse_vector(member((*list)[i], p, "p"), join(p, "p"));
            Vector b = parse_vector(member((*list)[i], p, "q"), join(p, "q"));
            if (a.dimension() != d || b.dimension() != d)
                fail(p, "dimension does not match the mapping");
            pairs.emplace_back(std::move(a), std::move(b));
        }
    }
    if (!sampler && pairs.empty())
        fail("sampler", "missing field (and no explicit pairs given)");

    VerifyOptions options;
    if (const json* t = optional_member(j, "", "fix_tol")) {
        options.fix_tol = number(*t, "fix_tol");
        if (options.fix_tol < 0.0)
            fail("fix_tol", "must be nonnegative");
    }
    if (const json* w = optional_member(j, "", "max_witnesses"))
        options.max_witnesses = count(*w, "max_witnesses");

    return VerifyProblem{params, std::move(zeta), std::move(map), std::move(sampler),
                         std::move(pairs), options};
}

ScfpSpec parse_scfp_problem(const json& j)
{
    ConvexSet domain = parse_set(member(j, "", "C"), "C");
    ConvexSet codomain = parse_set(member(j, "", "Q"), "Q");
    LinearOperator op = parse_operator(member(j, "", "T"), "T");
    std::optional<double> estimate;
    if (const json* n = optional_member(j, "", "norm_estimate"))
        estimate = number(*n, "norm_estimate");
    ScfpProblem problem = with_path("T", [&] {
        return ScfpProblem::make(std::move(domain), std::move(codomain), std::move(op), estimate);
    });

    Vector start = Vector::zeros(problem.op.cols());
    if (const json* p0 = optional_member(j, "", "p0")) {
        start = parse_vector(*p0, "p0");
        if (start.dimension() != problem.op.cols())
            fail("p0", "dimension does not match the columns of T");
    }
    ScfpSpec spec{std::move(problem), std::move(start), parse_lambda(j), IterationConfig{},
                  kDefaultFeasibilityTol};
    parse_config(j, spec.config);
    if (const json* f = optional_member(j, "", "feas_tol")) {
        spec.feasibility_tol = number(*f, "feas_tol");
        if (!(spec.feasibility_tol > 0.0))
            fail("feas_tol", "must be positive");
    }
    return spec;
}

json to_json(const Vector& v)
{
    return json(v.components());
}

json report_to_json(const VerificationReport& report)
{
    json witnesses = json::array();
    for (const Witness& w : report.witnesses) {
        witnesses.push_back({{"p", to_json(w.check.p)},
                             {"q", to_json(w.check.q)},
                             {"lhs", w.check.lhs},
                             {"rhs", w.check.rhs}});
    }
    json out = json::object();
    out["n_pairs"] = report.n_pairs;
    out["n_skipped"] = report.n_skipped;
    out["n_violations"] = report.n_violations;
    out["worst_margin"] = std::isfinite(report.worst_margin) ? json(report.worst_margin) : json();
    out["witnesses"] = std::move(witnesses);
    return out;
}

json solution_to_json(const ScfpResult& result)
{
    json out = json::object();
    out["x"] = to_json(result.trace.last());
    out["iterations"] = result.trace.iterations();
    out["dist_C"] = result.feasibility.dist_domain;
    out["dist_Q"] = result.feasibility.dist_codomain;
    out["status"] = std::string(to_string(result.trace.status));
    return out;
}

} // namespace kfix::io
