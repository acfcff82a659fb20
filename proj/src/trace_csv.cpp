#include "kfix/iteration.hpp"

#include <fmt/format.h>

#include <ostream>

namespace kfix {

std::string format_number(double x)
{
    return fmt::format("{:.17g}", x);
}

std::string trace_csv_header(std::size_t dimension)
{
    std::string header = "n,step_norm";
    for (std::size_t i = 0; i < dimension; ++i)
        header += fmt::format(",x{}", i);
    return header;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace)
{
    const std::size_t d = trace.iterates.empty() ? 0 : trace.iterates.front().dimension();
    out << trace_csv_header(d) << '\n';
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        std::string row = fmt::format("{},", n);
        if (n > 0)
            row += format_number(trace.step_norms[n - 1]);
        for (double x : trace.iterates[n].values()) {
            row += ',';
            row += format_number(x);
        }
        out << row << '\n';
    }
}

} // namespace kfix
