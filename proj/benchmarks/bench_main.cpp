#include <benchmark/benchmark.h>

#include <vector>

#include "hilbert/asymptotics.hpp"
#include "hilbert/densities.hpp"
#include "hilbert/estimators.hpp"
#include "hilbert/experiments.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/rng.hpp"

using namespace hilbert;

namespace {

void BM_HilbertWeights(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dim = static_cast<std::size_t>(state.range(1));
    const auto density = DensityModel::unit_cube(dim);
    Rng rng(1);
    const Dataset data(dim, sample_points(density, n, rng), std::vector<double>(n, 0.0));
    const std::vector<double> query(dim, 0.5);
    std::vector<double> w(n);
    for (auto _ : state) {
        hilbert_weights_into(query, data, static_cast<double>(dim), w);
        benchmark::DoNotOptimize(w.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HilbertWeights)->Args({1000, 1})->Args({65536, 1})->Args({65536, 3});

void BM_HilbertRegress(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto density = DensityModel::unit_cube(1);
    const Dataset data =
        sample_dataset(density, TargetFunction::sine(), NoiseModel::gaussian(0.1), n, std::uint64_t{2});
    const Point x({0.3});
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_regress(x, data).value);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HilbertRegress)->Arg(10000);

void BM_WinnRegress(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto density = DensityModel::unit_cube(2);
    const Dataset data = sample_dataset(density, TargetFunction::constant(1.0), NoiseModel::gaussian(0.1), n,
                                        std::uint64_t{3});
    const Point x({0.5, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(winn_regress(x, data, 32, 0.5).value);
}
BENCHMARK(BM_WinnRegress)->Arg(10000);

void BM_SamplePoints(benchmark::State& state) {
    const auto density = state.range(0) == 0 ? DensityModel::unit_cube(1) : DensityModel::radial_heavy_tail(2);
    Rng rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(sample_points(density, 65536, rng).data());
    state.SetItemsProcessed(state.iterations() * 65536);
}
BENCHMARK(BM_SamplePoints)->Arg(0)->Arg(1);

void BM_SolveWn(benchmark::State& state) {
    std::uint64_t n = 400;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_wn(n).exact);
        n = n % 1000000 + 7;
    }
}
BENCHMARK(BM_SolveWn);

void BM_KappaSine(benchmark::State& state) {
    const auto density = DensityModel::unit_cube(1);
    const auto f = TargetFunction::sine();
    for (auto _ : state) benchmark::DoNotOptimize(kappa(Point({0.3}), density, f));
}
BENCHMARK(BM_KappaSine);

void BM_KappaSquare(benchmark::State& state) {
    const auto density = DensityModel::unit_cube(2);
    const auto f = TargetFunction::linear({1.0, -0.5}, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(kappa(Point({0.3, 0.6}), density, f));
}
BENCHMARK(BM_KappaSquare)->Unit(benchmark::kMillisecond);

void BM_MomentsCell(benchmark::State& state) {
    ExperimentSpec s;
    s.kind = ExperimentKind::moments;
    s.query_points = {Point({0.5})};
    s.n_grid = {1000};
    s.replicates = 200;
    s.beta_list = {2.0};
    for (auto _ : state) benchmark::DoNotOptimize(run_moments(s, {1}).size());
}
BENCHMARK(BM_MomentsCell)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
