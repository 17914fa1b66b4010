#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "corbit/arith_core.hpp"
#include "corbit/clt.hpp"
#include "corbit/oracle.hpp"
#include "corbit/orbit_series.hpp"
#include "corbit/saddle.hpp"
#include "corbit/zfun.hpp"

using namespace corbit;

static void BM_DirichletConvolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto a = arith::power_weights_f(2, n);
    auto b = arith::power_weights_f(3, n);
    for (auto _ : state) benchmark::DoNotOptimize(arith::dirichlet_convolve(a, b));
    state.SetComplexityN(n);
}
BENCHMARK(BM_DirichletConvolve)->Arg(1024)->Arg(8192)->Complexity();

static void BM_OrbitTableExact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(orbits::build_orbit_table(2, n, orbits::TableMode::exact));
}
BENCHMARK(BM_OrbitTableExact)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_LogHFloat(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(orbits::log_h_float(2, 1.0, n));
    state.SetComplexityN(n);
}
BENCHMARK(BM_LogHFloat)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_ZStaircase(benchmark::State& state) {
    const double t = 1.0 / static_cast<double>(state.range(0));
    const double tol = 1e-10 / (t * t);
    for (auto _ : state) benchmark::DoNotOptimize(zfun::z_staircase(2, 2, t, tol));
}
BENCHMARK(BM_ZStaircase)->Arg(10)->Arg(100)->Arg(1000);

static void BM_SolveSaddle(benchmark::State& state) {
    const double n = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(saddle::solve_saddle(2, 1.0, n));
}
BENCHMARK(BM_SolveSaddle)->Arg(1000)->Arg(1000000);

static void BM_ContourJ(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sp = saddle::solve_saddle(2, 1.0, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(saddle::contour_integral_J(2, n, 1.0, sp.t));
    state.SetComplexityN(n);
}
BENCHMARK(BM_ContourJ)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_PmfColumn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::vector<int> targets{n};
    for (auto _ : state) benchmark::DoNotOptimize(clt::pmf_float_targets(2, 1.0, targets));
}
BENCHMARK(BM_PmfColumn)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_FellerSample(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    std::uint64_t seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::feller_sample(100, 1.0, seed, count));
        ++seed;
    }
    state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_FellerSample)->Arg(1000);

BENCHMARK_MAIN();
