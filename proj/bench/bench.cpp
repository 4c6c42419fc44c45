// Serial reference loops (threads = 1) against the OpenMP kernels
// (threads = 0, all cores).

#include "wfano/brute.hpp"
#include "wfano/classify.hpp"
#include "wfano/search.hpp"

#include <benchmark/benchmark.h>

using namespace wfano;

namespace {

void brute_box(benchmark::State &state)
{
    BruteOptions opt;
    opt.bounds = {30, 50, 80, 120, 180};
    opt.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_search(opt).families.size());
}

void classify_box(benchmark::State &state)
{
    BruteOptions opt;
    opt.bounds = {30, 50, 80, 120, 180};
    const auto fams = brute_search(opt).families;
    classify_family(fams.front()); // builds the series triple table once
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_all(fams, threads).size());
}

void structured_small(benchmark::State &state)
{
    StructuredSearchOptions opt;
    opt.bounds.m1 = {3, 10};
    opt.bounds.m2 = {3, 6};
    opt.bounds.m3 = {2, 4};
    opt.bounds.m4 = {1, 3};
    opt.series_cap = 400;
    opt.include_case23 = false;
    opt.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_structured_search(opt).sporadic.size());
}

void semigroup(benchmark::State &state)
{
    const bool table = state.range(0) != 0;
    const Int gens[] = {9101, 46837, 112320};
    Int hits = 0;
    for (auto _ : state)
        for (Int t = 300000; t < 300064; ++t)
            hits += table ? semigroup_member_table(gens, t) : semigroup_member(gens, t);
    benchmark::DoNotOptimize(hits);
}

} // namespace

BENCHMARK(brute_box)->Arg(1)->Arg(0)->ArgName("threads")->Unit(benchmark::kMillisecond);
BENCHMARK(classify_box)->Arg(1)->Arg(0)->ArgName("threads")->Unit(benchmark::kMillisecond);
BENCHMARK(structured_small)->Arg(1)->Arg(0)->ArgName("threads")->Unit(benchmark::kMillisecond);
BENCHMARK(semigroup)->Arg(0)->Arg(1)->ArgName("table")->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
