#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spectra/charfun.hpp"
#include "spectra/resolvents.hpp"
#include "spectra/specfun.hpp"
#include "spectra/stone.hpp"

using spectra::cplx;
using spectra::ObservableSpec;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1.0);
    return g;
}

void BM_Kummer1F1(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectra::specfun::kummer_1f1(cplx(0.25, -0.1), 0.5, cplx(12.0)));
}
BENCHMARK(BM_Kummer1F1);

void BM_VacuumResolventClosed(benchmark::State& state) {
    cplx z{1.5, -6.25e-3};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectra::resolvents::vacuum_resolvent_anticommutator_closed(z));
}
BENCHMARK(BM_VacuumResolventClosed);

void BM_AnticommutatorDensity(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectra::charfun::anticommutator_density(1.7));
}
BENCHMARK(BM_AnticommutatorDensity);

void BM_StoneCdfOscillator(benchmark::State& state) {
    auto grid = linspace(-1.0, 2.0, 61);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectra::stone::stone_cdf(ObservableSpec::oscillator(), grid));
}
BENCHMARK(BM_StoneCdfOscillator)->Unit(benchmark::kMillisecond);

void BM_StoneCdfHeisenberg(benchmark::State& state) {
    auto spec = ObservableSpec::heisenberg(Eigen::Vector3d(1, 0, 0));
    auto grid = linspace(-3.0, 3.0, 25);
    grid.push_back(40.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(spectra::stone::stone_cdf(spec, grid));
}
BENCHMARK(BM_StoneCdfHeisenberg)->Unit(benchmark::kMillisecond);

void BM_StoneCdfAnticommutator(benchmark::State& state) {
    auto grid = linspace(-12.0, 12.0, 241);
    grid.insert(grid.begin(), -40.0);
    grid.push_back(40.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectra::stone::stone_cdf(ObservableSpec::anticommutator(), grid));
}
BENCHMARK(BM_StoneCdfAnticommutator)->Unit(benchmark::kMillisecond);

void BM_CfGaussianRoute(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            spectra::charfun::cf_anticommutator_gaussian_route(1.0));
}
BENCHMARK(BM_CfGaussianRoute)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
