#include "kfix/cli.hpp"

#include "kfix/errors.hpp"
#include "kfix/io.hpp"
#include "kfix/reproduce.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <ostream>

namespace kfix::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + (dir / name).string() + "'");
    return out;
}

int exit_for(Status status)
{
    switch (status) {
    case Status::converged: return kExitOk;
    case Status::max_iters_reached: return kExitMaxIters;
    case Status::cycle_detected: return kExitCycle;
    }
    return kExitUsage;
}

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const UsageError& e) {
        err << "kfix: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "kfix: " << e.what() << '\n';
    } catch (const std::filesystem::filesystem_error& e) {
        err << "kfix: " << e.what() << '\n';
    }
    return kExitUsage;
}

std::string summary(const IterationTrace& trace, double residual)
{
    std::string line = fmt::format("status={} iterations={} residual={}", to_string(trace.status),
                                   trace.iterations(), format_number(residual));
    if (trace.status == Status::cycle_detected)
        line += fmt::format(" period={}", trace.cycle_period);
    return line;
}

} // namespace

int cmd_iterate(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        io::IterateProblem problem = io::parse_iterate_problem(io::load_json_file(spec.input));
        IterationConfig config = problem.config;
        if (spec.tol) config.tol = *spec.tol;
        if (spec.max_iters) config.max_iters = *spec.max_iters;

        const bool picard_mode = spec.picard || problem.picard;
        if (picard_mode && problem.second_map)
            throw UsageError("--picard cannot be combined with second_mapping");
        if (picard_mode) {
            config.lambda = 1.0;
        } else if (spec.lambda) {
            config.lambda = *spec.lambda;
        } else if (problem.lambda) {
            config.lambda = *problem.lambda;
        } else {
            throw UsageError("lambda: missing field (give lambda, k, --lambda or --picard)");
        }
        config.validate();

        IterationTrace trace;
        int code = kExitOk;
        try {
            if (problem.second_map)
                trace = alternating(problem.map, *problem.second_map, config, problem.start);
            else if (picard_mode)
                trace = picard(problem.map, config, problem.start);
            else
                trace = krasnoselskij(problem.map, config, problem.start);
            code = exit_for(trace.status);
        } catch (const NumericOverflow& e) {
            trace = e.partial_trace();
            err << "kfix: " << e.what() << '\n';
            code = kExitMaxIters;
        }

        auto csv = open_output(spec.output_dir, "trace.csv");
        write_trace_csv(csv, trace);

        double residual = fix_residual(problem.map, trace.last());
        if (problem.second_map)
            residual = std::max(residual, fix_residual(*problem.second_map, trace.last()));
        out << summary(trace, residual) << '\n';
        return code;
    });
}

int cmd_verify(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        io::VerifyProblem problem = io::parse_verify_problem(io::load_json_file(spec.input));
        VerificationReport report;
        if (problem.sampler) {
            PairSampler sampler = *problem.sampler;
            if (spec.seed) sampler.seed = *spec.seed;
            report = sample_verify(problem.params, problem.zeta, problem.map, sampler,
                                   problem.options, problem.pairs);
        } else {
            report = verify_pairs(problem.params, problem.zeta, problem.map, problem.pairs,
                                  problem.options);
        }

        auto file = open_output(spec.output_dir, "report.json");
        file << io::report_to_json(report).dump(2) << '\n';
        out << fmt::format("pairs={} skipped={} violations={} worst_margin={} ({})\n",
                           report.n_pairs, report.n_skipped, report.n_violations,
                           format_number(report.worst_margin),
                           MembershipReport::certificate_kind);
        return report.n_violations == 0 ? kExitOk : kExitViolation;
    });
}

int cmd_scfp(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        io::ScfpSpec problem = io::parse_scfp_problem(io::load_json_file(spec.input));
        IterationConfig config = problem.config;
        config.lambda = spec.lambda ? *spec.lambda : problem.lambda.value_or(kDefaultScfpLambda);
        if (spec.tol) config.tol = *spec.tol;
        if (spec.max_iters) config.max_iters = *spec.max_iters;
        config.validate();

        ScfpResult result;
        try {
            result = solve_scfp(problem.problem, config, problem.start);
        } catch (const NumericOverflow& e) {
            err << "kfix: " << e.what() << '\n';
            const IterationTrace& partial = e.partial_trace();
            result = ScfpResult{partial, feasibility(problem.problem, partial.last())};
        }

        auto file = open_output(spec.output_dir, "solution.json");
        file << io::solution_to_json(result).dump(2) << '\n';
        out << fmt::format("status={} iterations={} dist_C={} dist_Q={}\n",
                           to_string(result.trace.status), result.trace.iterations(),
                           format_number(result.feasibility.dist_domain),
                           format_number(result.feasibility.dist_codomain));

        const bool feasible = result.feasibility.dist_domain < problem.feasibility_tol &&
                              result.feasibility.dist_codomain < problem.feasibility_tol;
        if (feasible) return kExitOk;
        return result.trace.status == Status::cycle_detected ? kExitCycle : kExitMaxIters;
    });
}

int cmd_reproduce(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto target = reproduce::parse_target(spec.input);
        if (!target)
            throw UsageError("unknown reproduce target '" + spec.input +
                             "' (expected table1, table2, example38 or figure3)");
        reproduce::run(*target, spec.output_dir, out);
        return kExitOk;
    });
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    switch (spec.command) {
    case Command::iterate: return cmd_iterate(spec, out, err);
    case Command::verify: return cmd_verify(spec, out, err);
    case Command::scfp: return cmd_scfp(spec, out, err);
    case Command::reproduce: return cmd_reproduce(spec, out, err);
    }
    return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fixed points by Krasnoselskij iteration, contraction checks and split feasibility",
                 "kfix"};
    app.require_subcommand(1);

    RunSpec spec;
    std::string out_dir = ".";
    std::optional<double> lambda, tol;
    std::optional<std::size_t> max_iters;
    std::optional<std::uint64_t> seed;
    bool picard_flag = false;

    auto add_common = [&](CLI::App* sub, const char* input_help) {
        sub->add_option("--lambda", lambda, "Averaging parameter in (0, 1]");
        sub->add_option("--tol", tol, "Stop when the step norm drops below this");
        sub->add_option("--max-iters", max_iters, "Iteration cap");
        sub->add_option("--seed", seed, "Sampler seed");
        sub->add_flag("--picard", picard_flag, "Plain Picard iteration (lambda = 1)");
        sub->add_option("--out", out_dir, "Output directory (KFIX_OUT overrides)");
        sub->add_option("input", spec.input, input_help)->required();
    };
    struct Sub {
        const char* name;
        const char* help;
        const char* input_help;
        Command command;
    };
    const Sub subs[] = {
        {"iterate", "Run an iteration and write trace.csv", "PROBLEM.json", Command::iterate},
        {"verify", "Sample the contraction inequality and write report.json", "PROBLEM.json",
         Command::verify},
        {"scfp", "Solve a split feasibility problem and write solution.json", "PROBLEM.json",
         Command::scfp},
        {"reproduce", "Regenerate a reference table or figure", "table1|table2|example38|figure3",
         Command::reproduce},
    };
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, s.input_help);
        sub->callback([&spec, command = s.command] { spec.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "kfix: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    spec.output_dir = out_dir;
    if (const char* env = std::getenv("KFIX_OUT"); env && *env)
        spec.output_dir = env;
    spec.lambda = lambda;
    spec.tol = tol;
    spec.max_iters = max_iters;
    spec.seed = seed;
    spec.picard = picard_flag;
    return run(spec, out, err);
}

} // namespace kfix::cli
