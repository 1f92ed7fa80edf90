#include <benchmark/benchmark.h>

#include "dalg/recurrence.hpp"
#include "dalg/series.hpp"

using namespace dalg;

namespace {

ZSeries triangulation_integer(long N) {
    return to_zseries(tutte_series(mpq_class(5), N));
}

} // namespace

static void BM_MultiplyExactSchoolbook(benchmark::State& state) {
    ZSeries F = triangulation_integer(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(multiply_schoolbook(F, F));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MultiplyExactSchoolbook)->Range(64, 1024)->Complexity();

static void BM_MultiplyExactFast(benchmark::State& state) {
    ZSeries F = triangulation_integer(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(multiply_fast(F, F));
    }
    state.SetComplexityN(state.range(0));
}
// coefficient growth caps the usable prime pool well before 512 terms
BENCHMARK(BM_MultiplyExactFast)->Range(64, 256)->Complexity();

static void BM_MultiplyModular(benchmark::State& state) {
    MSeries F = reduce_mod(triangulation_integer(state.range(0)), 32749);
    for (auto _ : state) {
        benchmark::DoNotOptimize(multiply_fast(F, F));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MultiplyModular)->Range(256, 4096)->Complexity();

static void BM_ReduceMod(benchmark::State& state) {
    ZSeries F = triangulation_integer(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reduce_mod(F, 32749));
    }
}
BENCHMARK(BM_ReduceMod)->Range(256, 4096);

static void BM_TriangulationSeries(benchmark::State& state) {
    const long N = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tutte_series(mpq_class(5), N));
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_TriangulationSeries)->Range(64, 512)->Complexity();

static void BM_Compose(benchmark::State& state) {
    QSeries F = tutte_series(mpq_class(5), state.range(0));
    QSeries G = shift_up(tutte_series(mpq_class(7), state.range(0) - 1), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(F, G));
    }
}
BENCHMARK(BM_Compose)->Range(32, 128);
