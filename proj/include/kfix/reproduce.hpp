#pragma once

#include "kfix/iteration.hpp"
#include "kfix/verifier.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kfix::reproduce {

enum class Target { table1, table2, example38, figure3 };

std::optional<Target> parse_target(std::string_view name);
std::string_view to_string(Target target);

/// Reference iterates of R(p,q,r) = -(p,q,r)/2, lambda = 1/2, from (3,2,1).
extern const std::array<std::array<double, 3>, 11> kTable1Reference;

/// Reference Krasnoselskij iterates of the quarter turn from (0.5, 1) for
/// lambda = 0.1, 0.2, 0.3, 0.4, indexed [lambda][n] -> (x, y).
extern const std::array<double, 4> kTable2Lambdas;
extern const std::array<std::array<std::array<double, 2>, 11>, 4> kTable2Reference;

inline constexpr int kTable1SignificantDigits = 5;
inline constexpr double kTable2Tolerance = 0.005;

/// True when `value` agrees with `reference` to `digits` significant digits,
/// i.e. within half a unit in the last retained place.
bool matches_significant(double value, double reference, int digits);

struct Table1Row {
    std::size_t n;
    std::array<double, 3> computed;
    std::array<double, 3> reference;
    bool matches;
};

struct Table1Result {
    IterationTrace trace;
    std::vector<Table1Row> rows;
    bool all_match() const;
};

Table1Result table1();

struct Table2Cell {
    double lambda;
    std::size_t n;
    std::array<double, 2> computed;
    std::array<double, 2> reference;
    /// max |computed - reference| over both coordinates.
    double deviation;
    bool within_tolerance;
    /// Computed and reference values differ once rounded to three decimals.
    bool third_decimal_differs;
};

struct Table2Result {
    std::vector<IterationTrace> traces;
    std::vector<Table2Cell> cells;
    std::size_t cells_within_tolerance() const;
    double worst_deviation() const;
};

Table2Result table2();

struct Example38Result {
    double lhs;
    /// ||x-y||^b, ||x-Rx||^a, ||y-Ry||^c, (mixed term)^(1-a-b-c).
    std::array<double, 4> factors;
    double recomputed_product;
    double stated_product;
    double zeta_of_recomputed;
    double zeta_of_stated;
    double stated_zeta_value;
    bool violated_recomputed;
    bool violated_stated;
    /// k = 1/2 sweep over [-5, 5]^3.
    VerificationReport enriched_sweep;
};

inline constexpr double kExample38StatedProduct = 13.67664;
inline constexpr double kExample38StatedZeta = 0.9769;
inline constexpr std::size_t kExample38SweepPairs = 10000;
inline constexpr std::uint64_t kExample38SweepSeed = 38;

Example38Result example38();

/// Trajectories for lambda = 0.1 .. 0.4 over 20 iterations.
std::vector<IterationTrace> figure3_traces();
std::string figure3_svg(const std::vector<IterationTrace>& traces);

void write_table1_csv(std::ostream& out, const Table1Result& result);
void write_table2_csv(std::ostream& out, const Table2Result& result);
void write_example38_report(std::ostream& out, const Example38Result& result);

/// Computes the target, writes its artifact(s) under out_dir and a short
/// summary to `log`. Returns the written files.
std::vector<std::filesystem::path> run(Target target, const std::filesystem::path& out_dir,
                                       std::ostream& log);

} // namespace kfix::reproduce
