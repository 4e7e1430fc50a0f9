#include <benchmark/benchmark.h>

#include <numbers>

#include "fracineq/convex.hpp"
#include "fracineq/harness.hpp"

namespace {

using namespace fracineq;
using namespace fracineq::harness;

void BM_CordobaCheck(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto grid = make_grid(GridKind::Periodic, {0.0, 2.0 * std::numbers::pi}, n);
    const auto op = frac_pv_handle(grid, FracParams::make(0.5));
    const auto u = random_smooth(grid, 11, 8);
    const auto phi = find_convex("softplus");
    for (auto _ : state) benchmark::DoNotOptimize(check_cordoba(op, u.values(), phi, 0.0));
}
BENCHMARK(BM_CordobaCheck)->Arg(128)->Arg(512);

void BM_KatoCheck(benchmark::State& state) {
    const auto grid = make_grid(GridKind::Periodic, {0.0, 2.0 * std::numbers::pi}, 128);
    const auto op = frac_pv_handle(grid, FracParams::make(0.5));
    const auto u = random_smooth(grid, 13, 8);
    KatoOptions options;
    options.eps = {1e-1, 1e-2, 1e-3};
    for (auto _ : state) benchmark::DoNotOptimize(check_kato(op, u.values(), options));
}
BENCHMARK(BM_KatoCheck);

}  // namespace

BENCHMARK_MAIN();
