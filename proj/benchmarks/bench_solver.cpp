#include "slt/expansion.hpp"
#include "slt/fixtures.hpp"
#include "slt/green.hpp"
#include "slt/shoot.hpp"
#include "slt/spectrum.hpp"

#include <benchmark/benchmark.h>

namespace {

slt::Problem robin(std::size_t steps = 2048) {
    slt::ProblemSpec s = slt::fixtures::c2();
    s.grid_steps = steps;
    return slt::Problem::create(s);
}

void BM_ExpressionEval(benchmark::State& state) {
    const auto e = slt::parse_expression("1 + x^2 + sin(3*x)/(2 + cos(x))");
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e(x));
        x += 1e-6;
    }
}
BENCHMARK(BM_ExpressionEval);

void BM_Characteristic(benchmark::State& state) {
    const slt::Problem p = robin(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(slt::characteristic(p, 7.3).omega);
}
BENCHMARK(BM_Characteristic)->Arg(512)->Arg(2048)->Arg(8192)->Unit(benchmark::kMicrosecond);

void BM_Spectrum(benchmark::State& state) {
    const slt::Problem p = robin();
    for (auto _ : state) {
        benchmark::DoNotOptimize(slt::compute_spectrum(p, static_cast<std::size_t>(state.range(0))).size());
    }
}
BENCHMARK(BM_Spectrum)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ResolventQuadrature(benchmark::State& state) {
    const slt::Problem p = robin();
    const slt::FullTrace f = slt::sample(p, slt::parse_expression("cos(x) + x/3"));
    for (auto _ : state) benchmark::DoNotOptimize(slt::resolvent_quadrature(p, 2.9, f).max_abs());
}
BENCHMARK(BM_ResolventQuadrature)->Unit(benchmark::kMicrosecond);

void BM_ResolventSeries(benchmark::State& state) {
    const slt::Problem p = robin();
    const slt::Spectrum sp = slt::compute_spectrum(p, 200);
    const slt::FullTrace f = slt::sample(p, slt::parse_expression("cos(x) + x/3"));
    for (auto _ : state) benchmark::DoNotOptimize(slt::resolvent_series(p, sp, f, 2.9, 200).max_abs());
}
BENCHMARK(BM_ResolventSeries)->Unit(benchmark::kMillisecond);

void BM_Coefficients(benchmark::State& state) {
    const slt::Problem p = robin();
    const slt::Spectrum sp = slt::compute_spectrum(p, 80);
    const auto f = slt::parse_expression("x/abs(x)");
    for (auto _ : state) benchmark::DoNotOptimize(slt::fourier_coefficients(p, sp, f, 80).norm_squared);
}
BENCHMARK(BM_Coefficients)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
