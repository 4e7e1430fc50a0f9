#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "fracineq/extension.hpp"
#include "fracineq/kernel.hpp"
#include "fracineq/spectral.hpp"

namespace {

using namespace fracineq;

constexpr double kPi = std::numbers::pi;

void BM_FracPvApply(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto grid = make_grid(GridKind::Periodic, {0.0, 2.0 * kPi}, n);
    const auto op = nonlocal::frac_pv_operator(grid, FracParams::make(0.5));
    const auto u = random_smooth(grid, 7, 8);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(u.values()));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FracPvApply)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_FracPvBuild(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto grid = make_grid(GridKind::DirichletInterval, {-8.0, 8.0}, n);
    for (auto _ : state) benchmark::DoNotOptimize(nonlocal::frac_pv_operator(grid, FracParams::make(0.5)));
}
BENCHMARK(BM_FracPvBuild)->Arg(128)->Arg(512);

void BM_RestrictedApply(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto grid = make_grid(GridKind::DirichletInterval, {-1.0, 1.0}, n);
    const nonlocal::RestrictedOperator op(grid, FracParams::make(0.5));
    const auto u = sample([](double x) { return 1.0 - x * x; }, grid);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(u.values()));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RestrictedApply)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_RestrictedBox(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto grid = make_grid(GridKind::DirichletBox, {-1.0, 1.0}, n);
    const nonlocal::RestrictedOperator op(grid, FracParams::make(0.5, 2));
    const auto u = sample([](double x, double y) { return (1.0 - x * x) * (1.0 - y * y); }, grid);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(u.values()));
}
BENCHMARK(BM_RestrictedBox)->Arg(15)->Arg(31);

void BM_FourierFrac(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto grid = make_grid(GridKind::Periodic, {0.0, 2.0 * kPi}, n);
    const auto basis = spectral::fourier_basis(grid, n / 2);
    const auto u = random_smooth(grid, 3, 8);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::apply_spectral_frac(u.values(), 0.5, basis));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierFrac)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_SemigroupFrac(benchmark::State& state) {
    const auto grid = make_grid(GridKind::DirichletInterval, {0.0, kPi}, 127);
    const auto basis = spectral::dirichlet_basis(grid, 127);
    const auto rule = spectral::default_semigroup_rule(*basis);
    const auto u = sample([](double x) { return x * (kPi - x); }, grid);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::apply_semigroup_frac(u.values(), 0.5, basis, rule));
}
BENCHMARK(BM_SemigroupFrac);

void BM_ExtensionSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ny = static_cast<std::size_t>(state.range(1));
    const auto grid = make_grid(GridKind::Periodic, {0.0, 2.0 * kPi}, n);
    const auto params = FracParams::make(0.5);
    const auto u = sample([](double x) { return std::sin(x); }, grid);
    for (auto _ : state) {
        const auto field = extension::solve_cs_extension(u, params, 10.0, ny);
        benchmark::DoNotOptimize(extension::dtn_trace(field, params));
    }
}
BENCHMARK(BM_ExtensionSolve)->Args({128, 32})->Args({256, 64})->Args({512, 128});

}  // namespace
