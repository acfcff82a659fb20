#include "kfix/reproduce.hpp"

#include "kfix/comparison.hpp"
#include "kfix/errors.hpp"
#include "kfix/mapping.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace kfix::reproduce {

const std::array<std::array<double, 3>, 11> kTable1Reference = {{
    {3, 2, 1},
    {0.75, 0.5, 0.25},
    {0.1875, 0.125, 0.0625},
    {0.046875, 0.03125, 0.015625},
    {0.011719, 0.0078125, 0.0039062},
    {0.0029297, 0.0019531, 0.00097656},
    {0.00073242, 0.00048828, 0.00024414},
    {0.00018311, 0.00012207, 6.1035e-05},
    {4.5776e-05, 3.0518e-05, 1.5259e-05},
    {1.1444e-05, 7.6294e-06, 3.8147e-06},
    {2.861e-06, 1.9073e-06, 9.5367e-07},
}};

const std::array<double, 4> kTable2Lambdas = {0.1, 0.2, 0.3, 0.4};

const std::array<std::array<std::array<double, 2>, 11>, 4> kTable2Reference = {{
    {{{0.5, 1}, {0.35, 0.95}, {0.22, 0.89}, {0.10, 0.82}, {0.01, 0.75}, {-0.06, 0.67},
      {-0.12, 0.60}, {-0.17, 0.53}, {-0.20, 0.46}, {-0.23, 0.39}, {-0.25, 0.33}}},
    {{{0.5, 1}, {0.2, 0.9}, {-0.02, 0.76}, {-0.16, 0.60}, {-0.25, 0.45}, {-0.29, 0.30},
      {-0.29, 0.18}, {-0.27, 0.09}, {-0.23, 0.01}, {-0.19, -0.03}, {-0.14, -0.06}}},
    {{{0.5, 1}, {0.05, 0.85}, {-0.22, 0.61}, {-0.33, 0.36}, {-0.34, 0.15}, {-0.28, 0.002},
      {-0.20, -0.08}, {-0.11, -0.11}, {-0.04, -0.11}, {0.003, -0.09}, {0.03, -0.06}}},
    {{{0.5, 1}, {-0.1, 0.8}, {-0.38, 0.44}, {-0.40, 0.11}, {-0.28, -0.09}, {-0.13, -0.17},
      {-0.01, -0.15}, {0.05, -0.09}, {0.07, -0.037}, {0.05, 0.006}, {0.03, 0.027}}},
}};

std::optional<Target> parse_target(std::string_view name)
{
    if (name == "table1") return Target::table1;
    if (name == "table2") return Target::table2;
    if (name == "example38") return Target::example38;
    if (name == "figure3") return Target::figure3;
    return std::nullopt;
}

std::string_view to_string(Target target)
{
    switch (target) {
    case Target::table1: return "table1";
    case Target::table2: return "table2";
    case Target::example38: return "example38";
    case Target::figure3: return "figure3";
    }
    return "?";
}

bool matches_significant(double value, double reference, int digits)
{
    if (reference == 0.0)
        return value == 0.0;
    const double exponent = std::floor(std::log10(std::abs(reference)));
    const double half_unit = 0.5 * std::pow(10.0, exponent - (digits - 1));
    // Exact ties (e.g. 0.00390625 -> 0.0039062) sit on the boundary.
    return std::abs(value - reference) <= half_unit * (1.0 + 1e-9);
}

bool Table1Result::all_match() const
{
    return rows.size() == kTable1Reference.size() &&
           std::all_of(rows.begin(), rows.end(), [](const Table1Row& r) { return r.matches; });
}

Table1Result table1()
{
    IterationConfig config;
    config.lambda = 0.5;
    config.max_iters = kTable1Reference.size() - 1;
    config.tol = 1e-12;
    Table1Result result{krasnoselskij(catalog::halving_reflection(), config, Vector{3, 2, 1}), {}};

    for (std::size_t n = 0; n < kTable1Reference.size() && n < result.trace.iterates.size(); ++n) {
        const Vector& p = result.trace.iterates[n];
        Table1Row row{n, {p[0], p[1], p[2]}, kTable1Reference[n], true};
        for (std::size_t i = 0; i < 3; ++i)
            row.matches = row.matches &&
                          matches_significant(row.computed[i], row.reference[i],
                                              kTable1SignificantDigits);
        result.rows.push_back(row);
    }
    return result;
}

std::size_t Table2Result::cells_within_tolerance() const
{
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const Table2Cell& c) { return c.within_tolerance; }));
}

double Table2Result::worst_deviation() const
{
    double worst = 0.0;
    for (const auto& c : cells) worst = std::max(worst, c.deviation);
    return worst;
}

Table2Result table2()
{
    std::vector<RunJob> jobs;
    for (double lambda : kTable2Lambdas) {
        IterationConfig config;
        config.lambda = lambda;
        config.max_iters = 10;
        config.tol = 1e-300;
        jobs.push_back({catalog::rotation(), config, Vector{0.5, 1.0}});
    }
    Table2Result result{run_batch(jobs), {}};

    auto round3 = [](double x) { return std::round(x * 1000.0) / 1000.0; };
    for (std::size_t l = 0; l < kTable2Lambdas.size(); ++l) {
        const auto& trace = result.traces[l];
        for (std::size_t n = 0; n < kTable2Reference[l].size(); ++n) {
            const Vector& p = trace.iterates.at(n);
            Table2Cell cell{kTable2Lambdas[l], n, {p[0], p[1]}, kTable2Reference[l][n], 0.0, true,
                            false};
            for (std::size_t i = 0; i < 2; ++i) {
                cell.deviation = std::max(cell.deviation, std::abs(cell.computed[i] - cell.reference[i]));
                if (round3(cell.computed[i]) != round3(cell.reference[i]))
                    cell.third_decimal_differs = true;
            }
            cell.within_tolerance = cell.deviation <= kTable2Tolerance;
            result.cells.push_back(cell);
        }
    }
    return result;
}

Example38Result example38()
{
    const Mapping map = catalog::halving_reflection();
    const ComparisonFn zeta = ComparisonFn::linear(1.0 / 14.0);
    const ContractionParams plain{0.125, 0.5, 0.125, 0.0};
    const Vector x{2, 2, 2};
    const Vector y{-2, -2, -2};
    const NormedSpace& space = map.space();

    Example38Result r{};
    const PairCheck check = check_pair(plain, zeta, map, x, y);
    r.lhs = check.lhs;
    r.factors = {
        std::pow(space.distance(x, y), plain.b),
        std::pow(space.distance(x, map(x)), plain.a),
        std::pow(space.distance(y, map(y)), plain.c),
        std::pow(0.5 * (space.distance(x, map(y)) + space.distance(y, map(x))),
                 plain.tail_exponent()),
    };
    r.recomputed_product = interpolative_product(plain, map, x, y);
    r.stated_product = kExample38StatedProduct;
    r.zeta_of_recomputed = zeta(r.recomputed_product);
    r.zeta_of_stated = zeta(r.stated_product);
    r.stated_zeta_value = kExample38StatedZeta;
    r.violated_recomputed = !check.holds;
    r.violated_stated = r.lhs > r.zeta_of_stated + kHoldSlack;

    const ContractionParams enriched{0.125, 0.5, 0.125, 0.5};
    const PairSampler sampler{Vector::filled(3, -5.0), Vector::filled(3, 5.0), kExample38SweepPairs,
                              kExample38SweepSeed};
    r.enriched_sweep = sample_verify(enriched, zeta, map, sampler);
    return r;
}

std::vector<IterationTrace> figure3_traces()
{
    std::vector<RunJob> jobs;
    for (double lambda : kTable2Lambdas) {
        IterationConfig config;
        config.lambda = lambda;
        config.max_iters = 20;
        config.tol = 1e-300;
        jobs.push_back({catalog::rotation(), config, Vector{0.5, 1.0}});
    }
    return run_batch(jobs);
}

std::string figure3_svg(const std::vector<IterationTrace>& traces)
{
    constexpr double size = 600.0;
    constexpr double margin = 50.0;
    constexpr double extent = 1.2;
    auto px = [&](double x) { return margin + (x + extent) / (2 * extent) * (size - 2 * margin); };
    auto py = [&](double y) { return size - margin - (y + extent) / (2 * extent) * (size - 2 * margin); };
    static constexpr std::array<const char*, 6> colors = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                                          "#d62728", "#9467bd", "#8c564b"};

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
        "viewBox=\"0 0 {0} {0}\">\n",
        size);
    svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", size);
    svg += fmt::format("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" "
                       "stroke=\"black\"/>\n",
                       margin, size - 2 * margin);
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#aaa\"/>\n",
                       px(-extent), py(0), px(extent), py(0));
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#aaa\"/>\n",
                       px(0), py(-extent), px(0), py(extent));
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#aaa\" "
                       "stroke-dasharray=\"4 4\"/>\n",
                       px(0), py(0), px(1) - px(0));
    for (int tick : {-1, 1}) {
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                           px(tick), size - margin + 18, tick);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
                           margin - 6, py(tick) + 4, tick);
    }
    svg += fmt::format("<text x=\"{:.2f}\" y=\"30\" font-size=\"14\" text-anchor=\"middle\">"
                       "Krasnoselskij iterates of (x, y) -&gt; (-y, x) from (0.5, 1)</text>\n",
                       size / 2);

    for (std::size_t t = 0; t < traces.size(); ++t) {
        const char* color = colors[t % colors.size()];
        std::string points;
        for (const Vector& p : traces[t].iterates) {
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", px(p[0]), py(p[1]));
        }
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                           color, points);
        for (const Vector& p : traces[t].iterates) {
            svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n",
                               px(p[0]), py(p[1]), color);
        }
        const double ly = margin + 20 + 18 * double(t);
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
                           "stroke=\"{3}\" stroke-width=\"2\"/>\n",
                           size - margin - 110, ly, size - margin - 85, ly, color);
        const double lambda = t < kTable2Lambdas.size() ? kTable2Lambdas[t] : 0.0;
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\">lambda = {}</text>\n",
                           size - margin - 80, ly + 4, lambda);
    }
    svg += "</svg>\n";
    return svg;
}

void write_table1_csv(std::ostream& out, const Table1Result& result)
{
    write_trace_csv(out, result.trace);
}

void write_table2_csv(std::ostream& out, const Table2Result& result)
{
    std::string header = "n";
    for (double lambda : kTable2Lambdas)
        header += fmt::format(",lambda_{0}_x,lambda_{0}_y", lambda);
    out << header << '\n';
    const std::size_t rows = kTable2Reference.front().size();
    for (std::size_t n = 0; n < rows; ++n) {
        std::string row = std::to_string(n);
        for (const auto& trace : result.traces) {
            row += ',' + format_number(trace.iterates[n][0]);
            row += ',' + format_number(trace.iterates[n][1]);
        }
        out << row << '\n';
    }
}

void write_example38_report(std::ostream& out, const Example38Result& r)
{
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    out << "R(z) = -z/2 on R^3 with the l1 norm, zeta(t) = t/14\n";
    out << "pair x = (2, 2, 2), y = (-2, -2, -2)\n\n";
    out << "interpolative condition (k = 0, a = c = 1/8, b = 1/2)\n";
    out << fmt::format("  lhs ||Rx - Ry||              {}\n", format_number(r.lhs));
    out << fmt::format("  ||x - y||^b                  {}\n", format_number(r.factors[0]));
    out << fmt::format("  ||x - Rx||^a                 {}\n", format_number(r.factors[1]));
    out << fmt::format("  ||y - Ry||^c                 {}\n", format_number(r.factors[2]));
    out << fmt::format("  mixed term^(1-a-b-c)         {}\n", format_number(r.factors[3]));
    out << fmt::format("  recomputed product           {}\n", format_number(r.recomputed_product));
    out << fmt::format("  stated product               {}\n", r.stated_product);
    out << fmt::format("  zeta(recomputed product)     {}\n", format_number(r.zeta_of_recomputed));
    out << fmt::format("  zeta(stated product)         {}\n", format_number(r.zeta_of_stated));
    out << fmt::format("  stated zeta value            {}\n", r.stated_zeta_value);
    out << fmt::format("  violated (recomputed)        {}\n", yes(r.violated_recomputed));
    out << fmt::format("  violated (stated)            {}\n\n", yes(r.violated_stated));
    out << fmt::format("enriched condition (k = 1/2), {} pairs uniform in [-5, 5]^3, seed {}\n",
                       kExample38SweepPairs, kExample38SweepSeed);
    out << fmt::format("  n_pairs                      {}\n", r.enriched_sweep.n_pairs);
    out << fmt::format("  n_skipped                    {}\n", r.enriched_sweep.n_skipped);
    out << fmt::format("  n_violations                 {}\n", r.enriched_sweep.n_violations);
    out << fmt::format("  worst_margin                 {}\n", format_number(r.enriched_sweep.worst_margin));
}

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

std::vector<std::filesystem::path> run(Target target, const std::filesystem::path& out_dir,
                                       std::ostream& log)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> files;

    switch (target) {
    case Target::table1: {
        const auto result = table1();
        const auto path = out_dir / "table1.csv";
        auto out = open_output(path);
        write_table1_csv(out, result);
        files.push_back(path);
        std::size_t matching = 0;
        for (const auto& row : result.rows) {
            if (row.matches) ++matching;
            else
                log << fmt::format("table1: row {} differs: ({}, {}, {})\n", row.n,
                                   format_number(row.computed[0]), format_number(row.computed[1]),
                                   format_number(row.computed[2]));
        }
        log << fmt::format("table1: {}/{} rows match to {} significant digits -> {}\n", matching,
                           kTable1Reference.size(), kTable1SignificantDigits, path.string());
        break;
    }
    case Target::table2: {
        const auto result = table2();
        const auto path = out_dir / "table2.csv";
        auto out = open_output(path);
        write_table2_csv(out, result);
        files.push_back(path);
        for (const auto& c : result.cells) {
            if (!c.third_decimal_differs) continue;
            log << fmt::format("table2: lambda={} n={} computed ({:.4f}, {:.4f}) reference ({}, {}) "
                               "deviation {:.4f}{}\n",
                               c.lambda, c.n, c.computed[0], c.computed[1], c.reference[0],
                               c.reference[1], c.deviation,
                               c.within_tolerance ? "" : " [outside tolerance]");
        }
        log << fmt::format("table2: {}/{} cells within {} (worst deviation {:.5f}) -> {}\n",
                           result.cells_within_tolerance(), result.cells.size(), kTable2Tolerance,
                           result.worst_deviation(), path.string());
        break;
    }
    case Target::example38: {
        const auto result = example38();
        const auto path = out_dir / "example38.txt";
        auto out = open_output(path);
        write_example38_report(out, result);
        files.push_back(path);
        write_example38_report(log, result);
        break;
    }
    case Target::figure3: {
        const auto path = out_dir / "figure3.svg";
        auto out = open_output(path);
        out << figure3_svg(figure3_traces());
        files.push_back(path);
        log << "figure3: 4 trajectories, 20 iterations -> " << path.string() << '\n';
        break;
    }
    }
    return files;
}

} // namespace kfix::reproduce
