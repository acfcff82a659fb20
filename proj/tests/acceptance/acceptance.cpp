// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "kfix/comparison.hpp"
#include "kfix/iteration.hpp"
#include "kfix/mapping.hpp"
#include "kfix/reproduce.hpp"
#include "kfix/scfp.hpp"
#include "kfix/verifier.hpp"

#include "gen.hpp"
#include "generators.hpp"
#include "oracles/jacobi_svd.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace kfix;
using kfix::testing::Gen;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

IterationConfig config(double lambda, std::size_t max_iters = kDefaultMaxIters, double tol = kDefaultIterationTol,
                       std::size_t cycle_window = 0)
{
    IterationConfig cfg;
    cfg.lambda = lambda;
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    cfg.cycle_window = cycle_window;
    return cfg;
}

std::string num(double x)
{
    std::ostringstream out;
    out.precision(4);
    out << x;
    return out.str();
}

double max_abs_diff(const Vector& u, const Vector& v)
{
    double worst = 0;
    for (std::size_t i = 0; i < u.dimension(); ++i) worst = std::max(worst, std::abs(u[i] - v[i]));
    return worst;
}

std::filesystem::path scratch_dir()
{
    const auto dir = std::filesystem::temp_directory_path() / "kfix_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

Outcome table1_reproduction()
{
    Outcome out;
    std::ostringstream log;
    const auto start = Clock::now();
    reproduce::run(reproduce::Target::table1, scratch_dir(), log);
    const double elapsed = seconds_since(start);
    const auto result = reproduce::table1();
    std::size_t matched = 0;
    for (const auto& row : result.rows) matched += row.matches;
    out.require(result.rows.size() == 11 && result.all_match(), std::to_string(matched) + "/11 rows match");
    out.require(elapsed < 1.0, "runtime " + num(elapsed) + " s");
    if (out.pass) out.detail = "11/11 rows to 5 significant digits, " + num(elapsed) + " s";
    return out;
}

Outcome table2_reproduction()
{
    Outcome out;
    std::ostringstream log;
    const auto start = Clock::now();
    reproduce::run(reproduce::Target::table2, scratch_dir(), log);
    const double elapsed = seconds_since(start);
    const auto result = reproduce::table2();
    const std::size_t within = result.cells_within_tolerance();
    out.require(result.cells.size() == 44 && within == 44,
                std::to_string(within) + "/44 cells within 0.005, worst deviation " +
                    num(result.worst_deviation()));
    out.require(elapsed < 1.0, "runtime " + num(elapsed) + " s");
    if (out.pass) out.detail = "44/44 cells within 0.005";
    return out;
}

Outcome example38_separation()
{
    Outcome out;
    const auto map = catalog::halving_reflection();
    const auto zeta = ComparisonFn::linear(1.0 / 14.0);
    const auto witness = check_pair(ContractionParams{0.125, 0.5, 0.125, 0.0}, zeta, map, Vector{2, 2, 2},
                                    Vector{-2, -2, -2});
    out.require(!witness.skipped && !witness.holds, "witness pair does not violate the plain condition");
    out.require(witness.lhs == 6.0, "lhs is not exactly 6");

    const auto result = reproduce::example38();
    out.require(result.enriched_sweep.n_pairs == 10000, "enriched sweep size");
    out.require(result.enriched_sweep.n_violations == 0,
                std::to_string(result.enriched_sweep.n_violations) + " enriched violations");
    std::ostringstream report;
    reproduce::write_example38_report(report, result);
    const auto text = report.str();
    std::ostringstream product;
    product.precision(17);
    product << result.recomputed_product;
    out.require(text.find("13.67664") != std::string::npos && text.find("0.9769") != std::string::npos &&
                    text.find(product.str().substr(0, 6)) != std::string::npos,
                "report does not record recomputed and stated values");
    if (out.pass)
        out.detail = "lhs=6, recomputed product " + num(result.recomputed_product) +
                     ", 0 violations in 10000 enriched pairs";
    return out;
}

Outcome rotation_dichotomy()
{
    Outcome out;
    const auto rot = catalog::rotation();
    const Vector p0{0.5, 1};
    const auto pic = picard(rot, config(1.0, 8, kDefaultIterationTol, 8), p0);
    out.require(pic.status == Status::cycle_detected && pic.cycle_period == 4 && pic.iterations() <= 8,
                "picard status " + std::string(to_string(pic.status)));
    std::size_t worst_iters = 0;
    for (int step = 1; step <= 9; ++step) {
        const double lambda = step / 10.0;
        const auto trace = krasnoselskij(rot, config(lambda, 2000), p0);
        const double dist = rot.space().norm(trace.last());
        out.require(trace.status == Status::converged && dist < 1e-8,
                    "lambda " + num(lambda) + " ended at distance " + num(dist));
        worst_iters = std::max(worst_iters, trace.iterations());
    }
    if (out.pass)
        out.detail = "picard period 4 after " + std::to_string(pic.iterations()) +
                     " steps; averaged runs need at most " + std::to_string(worst_iters) + " iterations";
    return out;
}

Outcome fix_set_invariance()
{
    Outcome out;
    Gen gen(505);
    double worst_identity = 0;
    double worst_trace = 0;
    for (const auto& entry : catalog::all()) {
        for (int step = 1; step <= 9; ++step) {
            const double lambda = step / 10.0;
            const Mapping avg = averaged(entry.map, lambda);
            for (int i = 0; i < 100; ++i) {
                const Vector p = gen.vector(entry.map.dimension());
                worst_identity =
                    std::max(worst_identity, max_abs_diff(p - apply(avg, p), lambda * (p - apply(entry.map, p))));
            }
            const Vector p0 = gen.vector(entry.map.dimension());
            const auto kras = krasnoselskij(entry.map, config(lambda), p0);
            const auto pic = picard(avg, config(lambda), p0);
            if (kras.iterates.size() != pic.iterates.size()) {
                out.require(false, entry.name + ": trace lengths differ");
                continue;
            }
            for (std::size_t m = 0; m < kras.iterates.size(); ++m)
                worst_trace = std::max(worst_trace, max_abs_diff(kras.iterates[m], pic.iterates[m]));
        }
    }
    out.require(worst_identity <= 1e-12, "identity deviation " + num(worst_identity));
    out.require(worst_trace <= 1e-15, "trace deviation " + num(worst_trace));
    if (out.pass) out.detail = "4 maps x 9 lambdas x 100 points";
    return out;
}

Outcome comparison_functions()
{
    Outcome out;
    const auto grid = default_grid();
    out.require(check_membership(ComparisonFn::linear(2.0 / 3.0), grid).passed(), "2t/3 rejected");
    out.require(check_membership(ComparisonFn::linear(1.0 / 14.0), grid).passed(), "t/14 rejected");
    const auto identity = ComparisonFn::custom("identity", [](double t) { return t; });
    out.require(!check_membership(identity, grid).strict_below_identity_ok, "identity accepted");
    Gen gen(606);
    for (int i = 0; i < 100; ++i) {
        const auto zeta = ComparisonFn::linear(gen.uniform(0, 0.99));
        const double t = gen.uniform(0, 1000);
        const std::size_t m = gen.index(0, 30);
        const std::size_t n = gen.index(0, 30);
        out.require(iterate_zeta(zeta, t, m + n) == iterate_zeta(zeta, iterate_zeta(zeta, t, n), m),
                    "composition law fails");
    }
    if (out.pass) out.detail = "memberships as expected, composition law on 100 samples";
    return out;
}

Outcome k_zero_reduction()
{
    Outcome out;
    Gen gen(707);
    double worst = 0;
    for (const auto& entry : catalog::all()) {
        for (int i = 0; i < 1000; ++i) {
            const ContractionParams params{gen.uniform(0.01, 0.32), gen.uniform(0.01, 0.32),
                                           gen.uniform(0.01, 0.32), 0.0};
            const auto zeta = ComparisonFn::linear(gen.uniform(0, 0.99));
            const Vector p = gen.vector(entry.map.dimension());
            const Vector q = gen.vector(entry.map.dimension());
            worst = std::max(worst, std::abs(lhs_enriched(params, entry.map, p, q) - lhs_interpolative(entry.map, p, q)));
            worst = std::max(worst, std::abs(rhs_enriched(params, zeta, entry.map, p, q) -
                                             rhs_interpolative(params, zeta, entry.map, p, q)));
        }
    }
    out.require(worst <= 1e-12, "max deviation " + num(worst));
    if (out.pass) out.detail = "4000 pairs, max deviation " + num(worst);
    return out;
}

Outcome projection_suite()
{
    using kfix::testing::l2;
    Outcome out;
    Gen gen(808);
    for (std::size_t variant = 0; variant < 4; ++variant) {
        const auto set = kfix::testing::random_set(gen, 3, variant);
        std::vector<Vector> members;
        for (int i = 0; i < 1000; ++i) members.push_back(kfix::testing::random_member(gen, set));
        for (int i = 0; i < 1000; ++i) {
            const Vector p = gen.vector(3, -10, 10);
            const Vector q = gen.vector(3, -10, 10);
            const Vector pp = project(set, p);
            out.require(max_abs_diff(project(set, pp), pp) <= 1e-9, "idempotence, variant " + std::to_string(variant));
            out.require(l2(pp - project(set, q)) <= l2(p - q) + 1e-9,
                        "nonexpansiveness, variant " + std::to_string(variant));
        }
        for (int i = 0; i < 1000; ++i) {
            const Vector p = gen.vector(3, -10, 10);
            const double best = l2(p - project(set, p));
            for (const Vector& m : members)
                if (best > l2(p - m) + 1e-9) {
                    out.require(false, "optimality, variant " + std::to_string(variant));
                    break;
                }
        }
    }
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t rows = gen.index(1, 8);
        const std::size_t cols = gen.index(1, 8);
        const auto a = gen.matrix(rows, cols);
        const double oracle = kfix::oracle::spectral_norm(rows, cols, a);
        worst = std::max(worst, std::abs(operator_norm(LinearOperator(rows, cols, a)) - 1.01 * oracle));
    }
    out.require(worst <= 1e-6, "operator_norm deviation " + num(worst));
    if (out.pass) out.detail = "4 set variants; operator_norm max deviation " + num(worst);
    return out;
}

// Set of the given variant that contains `x` with some interior slack.
ConvexSet set_containing(Gen& gen, const Vector& x, std::size_t variant)
{
    const std::size_t d = x.dimension();
    switch (variant % 3) {
    case 0:
        return ConvexSet::box(x - gen.vector(d, 0.1, 1.0), x + gen.vector(d, 0.1, 1.0));
    case 1:
        return ConvexSet::ball(x + gen.vector(d, -0.1, 0.1), gen.uniform(0.5, 2.0));
    default: {
        const Vector n = kfix::testing::nonzero_vector(gen, d);
        return ConvexSet::halfspace(n, dot(n, x) + gen.uniform(0.05, 1.0));
    }
    }
}

Outcome scfp_property()
{
    Outcome out;
    Gen gen(909);
    const auto start = Clock::now();
    std::size_t worst_iters = 0;
    for (int instance = 0; instance < 20; ++instance) {
        const std::size_t rows = gen.index(1, 6);
        const std::size_t cols = gen.index(1, 6);
        const LinearOperator op(rows, cols, gen.matrix(rows, cols));
        if (op.is_zero()) continue;
        const Vector x_star = gen.vector(cols, -2, 2);
        const auto problem = ScfpProblem::make(set_containing(gen, x_star, gen.index(0, 2)),
                                               set_containing(gen, op.apply(x_star), gen.index(0, 2)), op);
        const std::string tag = "instance " + std::to_string(instance);
        out.require(fix_residual(build_L(problem), x_star) < 1e-10, tag + ": constructed point not fixed");
        const auto result = solve_scfp(problem, config(kDefaultScfpLambda, 10000), gen.vector(cols, -5, 5));
        out.require(result.feasibility.dist_domain < 1e-6 && result.feasibility.dist_codomain < 1e-6,
                    tag + ": dist_C=" + num(result.feasibility.dist_domain) +
                        " dist_Q=" + num(result.feasibility.dist_codomain));
        worst_iters = std::max(worst_iters, result.trace.iterations());
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 30.0, "runtime " + num(elapsed) + " s");
    if (out.pass)
        out.detail = "20 instances, at most " + std::to_string(worst_iters) + " iterations, " +
                     num(elapsed) + " s";
    return out;
}

Outcome alternating_scheme()
{
    Outcome out;
    const NormedSpace plane(2, NormKind::l2);
    const auto alt =
        alternating(Mapping::scale(plane, -0.5), Mapping::scale(plane, -0.25), config(0.5), Vector{1, 1});
    out.require(alt.status == Status::converged && alt.limit && plane.norm(*alt.limit) <= 1e-10,
                "two-map run did not reach the origin");
    const auto map = catalog::halving_reflection();
    const auto same = alternating(map, map, config(0.5, 10, 1e-12), Vector{3, 2, 1});
    const auto table = reproduce::table1();
    bool identical = same.iterates.size() == table.trace.iterates.size();
    for (std::size_t m = 0; identical && m < same.iterates.size(); ++m)
        identical = same.iterates[m] == table.trace.iterates[m];
    out.require(identical, "R = S trace differs from the table 1 trace");
    if (out.pass) out.detail = "origin reached in " + std::to_string(alt.iterations()) + " steps; R = S matches";
    return out;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"table 1 reproduction", table1_reproduction},
        {"table 2 reproduction", table2_reproduction},
        {"halving-map separation", example38_separation},
        {"rotation dichotomy", rotation_dichotomy},
        {"fix-set invariance", fix_set_invariance},
        {"comparison functions", comparison_functions},
        {"k = 0 reduction", k_zero_reduction},
        {"projection suite", projection_suite},
        {"scfp feasibility", scfp_property},
        {"alternating scheme", alternating_scheme},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.pass;
        std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
