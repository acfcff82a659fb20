// Parallel kernels against their serial references.

#include "kfix/iteration.hpp"
#include "kfix/mapping.hpp"
#include "kfix/verifier.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace kfix;

namespace {

std::vector<PointPair> sample_pairs(std::size_t n)
{
    return draw_pairs(PairSampler{Vector::filled(3, -5), Vector::filled(3, 5), n, 38});
}

// A map with some per-call cost so the sweep is not memory bound.
Mapping wavy_map()
{
    return Mapping::from_function(NormedSpace(3, NormKind::l2), "wavy", [](const Vector& p) {
        return Vector{0.4 * std::sin(p[1]), 0.4 * std::cos(p[2]), 0.3 * std::tanh(p[0])};
    });
}

template <auto Verify>
void bm_verify(benchmark::State& state)
{
    const auto pairs = sample_pairs(std::size_t(state.range(0)));
    const auto map = wavy_map();
    const ContractionParams params{0.2, 0.3, 0.1, 0.5};
    const auto zeta = ComparisonFn::linear(0.9);
    for (auto _ : state) benchmark::DoNotOptimize(Verify(params, zeta, map, pairs, VerifyOptions{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<RunJob> rotation_jobs(std::size_t n)
{
    std::vector<RunJob> jobs;
    for (std::size_t i = 0; i < n; ++i) {
        IterationConfig cfg;
        cfg.lambda = 0.05 + 0.9 * double(i % 17) / 16.0;
        jobs.push_back({catalog::rotation(), cfg, Vector{0.5, 1}});
    }
    return jobs;
}

template <auto Batch>
void bm_batch(benchmark::State& state)
{
    const auto jobs = rotation_jobs(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Batch(jobs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(bm_verify<verify_pairs>)->Name("verify_pairs/parallel")->Arg(1000)->Arg(100000);
BENCHMARK(bm_verify<verify_pairs_serial>)->Name("verify_pairs/serial")->Arg(1000)->Arg(100000);
BENCHMARK(bm_batch<run_batch>)->Name("run_batch/parallel")->Arg(16)->Arg(512);
BENCHMARK(bm_batch<run_batch_serial>)->Name("run_batch/serial")->Arg(16)->Arg(512);

BENCHMARK_MAIN();
