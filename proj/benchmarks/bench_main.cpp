#include <benchmark/benchmark.h>

#include <cmath>

#include "chiralqb/analytic.hpp"
#include "chiralqb/dynamics.hpp"
#include "chiralqb/oracle.hpp"

using namespace chiralqb;

static void BM_moment_rhs(benchmark::State& state) {
    const SystemParams p = canonical_params(0.5, M_PI / 2, 0.3);
    MomentState s;
    s.m1 = cplx(1.1, -0.4);
    s.m2 = cplx(0.3, 2.2);
    s.n1 = 1.5;
    s.n2 = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment_rhs(s, p));
    }
}
BENCHMARK(BM_moment_rhs);

static void BM_evolve_working_point(benchmark::State& state) {
    const SystemParams p = canonical_params(1.0, M_PI / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(p, 5000.0, 51));
    }
}
BENCHMARK(BM_evolve_working_point);

static void BM_steady_metrics(benchmark::State& state) {
    const SystemParams p = canonical_params(0.7, 1.2, 0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_metrics(p));
    }
}
BENCHMARK(BM_steady_metrics);

static void BM_transient_means(benchmark::State& state) {
    const SystemParams p = canonical_params(0.7, 1.2);
    double t = 0.0;
    for (auto _ : state) {
        t += 1.0;
        benchmark::DoNotOptimize(transient_means(p, t));
    }
}
BENCHMARK(BM_transient_means);

static void BM_thermal_weight(benchmark::State& state) {
    const SystemParams p = canonical_params(0.7, 1.2, 0.5);
    double t = 0.0;
    for (auto _ : state) {
        t += 1.0;
        benchmark::DoNotOptimize(thermal_weight(p, 2, t));
    }
}
BENCHMARK(BM_thermal_weight);

static void BM_liouvillian_apply(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    const SystemParams p = canonical_params(0.5, M_PI / 4, 0.1);
    const Liouvillian gen(p, cutoff);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(gen.dim(), gen.dim());
    rho(0, 0) = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen.apply(rho));
    }
}
BENCHMARK(BM_liouvillian_apply)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
