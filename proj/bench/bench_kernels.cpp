// Serial reference vs OpenMP kernel for each parallel entry point.

#include "sba/belief.hpp"
#include "sba/catalog.hpp"
#include "sba/census.hpp"
#include "sba/cf_arith.hpp"
#include "sba/scaling.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace sba;

namespace {

// linear scale on 10 atoms with unequal masses
const Scaling& big_scaling()
{
    static const Scaling s = [] {
        std::vector<Rational> m = {Rational(1, 16), Rational(1, 16), Rational(1, 16), Rational(1, 16),
                                   Rational(1, 8), Rational(1, 8), Rational(1, 8), Rational(1, 8),
                                   Rational(1, 8), Rational(1, 8)};
        for (auto& q : m)
            q.canonicalize();
        const std::vector<std::vector<Rational>> ms = {m};
        return scaling_from_measures(letter_algebra(10), ms);
    }();
    return s;
}

void verify_parallel(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(verify_axioms(big_scaling()).violation_count);
}

void verify_serial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(verify_axioms_serial(big_scaling()).violation_count);
}

void census(benchmark::State& st)
{
    const bool parallel = st.range(1) != 0;
    for (auto _ : st)
        benchmark::DoNotOptimize(enumerate_scalings(static_cast<int>(st.range(0)), {}, parallel).counts.total());
}

void belief(benchmark::State& st)
{
    const bool parallel = st.range(0) != 0;
    for (auto _ : st)
        benchmark::DoNotOptimize(derivation_counterexample_search(3, AxiomSet::all(), parallel).passing);
}

}  // namespace

BENCHMARK(verify_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(census)->Args({3, 1})->Args({3, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(belief)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
