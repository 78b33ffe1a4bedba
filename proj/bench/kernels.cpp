#include <fgsolve/functional_graph.hpp>
#include <fgsolve/oracle.hpp>
#include <fgsolve/solve_abstraction.hpp>
#include <fgsolve/solve_graph.hpp>
#include <fgsolve/tabstraction.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace fgsolve;

auto instance(std::size_t n, std::size_t pa, std::size_t px) -> Instance
{
    return gen_instance({.n_a = n, .n_x = n, .p_a = pa, .p_x = px, .max_indegree = 4, .seed = 2024});
}

void product_serial(benchmark::State & state)
{
    const auto inst = instance(static_cast<std::size_t>(state.range(0)), 3, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(direct_product_serial(inst.a, inst.x));
}

void product_parallel(benchmark::State & state)
{
    const auto inst = instance(static_cast<std::size_t>(state.range(0)), 3, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(direct_product(inst.a, inst.x));
}

void abstraction_serial(benchmark::State & state)
{
    const auto inst = instance(static_cast<std::size_t>(state.range(0)), 5, 7);
    const auto ta = t_abstraction(inst.a);
    const auto tb = t_abstraction(inst.b);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_abstraction_serial(ta, tb, 7));
}

void abstraction_parallel(benchmark::State & state)
{
    const auto inst = instance(static_cast<std::size_t>(state.range(0)), 5, 7);
    const auto ta = t_abstraction(inst.a);
    const auto tb = t_abstraction(inst.b);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_abstraction(ta, tb, 7));
}

void graph_alignments(benchmark::State & state, bool parallel)
{
    const auto inst = instance(static_cast<std::size_t>(state.range(0)), 4, 6);
    SolveOptions options;
    options.parallel = parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_graph(inst.a, inst.b, 6, options));
}

void graph_serial(benchmark::State & state) { graph_alignments(state, false); }
void graph_parallel(benchmark::State & state) { graph_alignments(state, true); }

} // namespace

BENCHMARK(product_serial)->Arg(60)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(product_parallel)->Arg(60)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(abstraction_serial)->Arg(60)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(abstraction_parallel)->Arg(60)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(graph_serial)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(graph_parallel)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
