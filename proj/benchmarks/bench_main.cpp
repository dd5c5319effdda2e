#include <benchmark/benchmark.h>

#include <sigsurf/geometry.hpp>
#include <sigsurf/immersion.hpp>
#include <sigsurf/solutions.hpp>
#include <sigsurf/su3frame.hpp>
#include <sigsurf/symmetry.hpp>

using namespace sigsurf;

namespace {

const AffineSolution& special() {
    static const AffineSolution s = AffineSolution::from_strings({"xi", "xi^2/2"});
    return s;
}

void BM_ParseDifferentiate(benchmark::State& st) {
    for (auto _ : st) {
        const expr::Expr e = expr::parse("-(tanh(xi)+tanh(xibar))/(sech(xi)+sech(xibar))");
        benchmark::DoNotOptimize(expr::Tower(e, 3));
    }
}
BENCHMARK(BM_ParseDifferentiate);

void BM_ModelAt(benchmark::State& st) {
    const auto& e = catalog_entry("soliton");
    const SolutionEvaluator ev(e.solution);
    for (auto _ : st) benchmark::DoNotOptimize(model_at(ev, cd(0.3, 0.4)));
}
BENCHMARK(BM_ModelAt);

void BM_FirstOrderAt(benchmark::State& st) {
    const SolutionEvaluator ev(special());
    for (auto _ : st) benchmark::DoNotOptimize(first_order_at(ev, cd(0.3, 0.4)));
}
BENCHMARK(BM_FirstOrderAt);

// 41 x 41 curvature grid
void BM_GeometryGrid(benchmark::State& st) {
    const SolutionEvaluator ev(special());
    const auto pts = grid_points({0.0, 1.5, int(st.range(0))});
    for (auto _ : st) benchmark::DoNotOptimize(geometry_grid(ev, pts));
    st.SetItemsProcessed(st.iterations() * pts.size());
}
BENCHMARK(BM_GeometryGrid)->Arg(11)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_ImmerseByPath(benchmark::State& st) {
    const SolutionEvaluator ev(catalog_entry("soliton").solution);
    for (auto _ : st) benchmark::DoNotOptimize(immerse_by_path(ev, PathSpec::straight(0.0, cd(1.0, 0.7))));
}
BENCHMARK(BM_ImmerseByPath)->Unit(benchmark::kMicrosecond);

void BM_MovingFrame(benchmark::State& st) {
    const SolutionEvaluator ev(special());
    for (auto _ : st) benchmark::DoNotOptimize(moving_frame(ev, cd(1.0, 0.5)));
}
BENCHMARK(BM_MovingFrame)->Unit(benchmark::kMicrosecond);

void BM_GaussWeingarten(benchmark::State& st) {
    const SolutionEvaluator ev(special());
    for (auto _ : st) benchmark::DoNotOptimize(gauss_weingarten(ev, cd(1.0, 0.5)));
}
BENCHMARK(BM_GaussWeingarten)->Unit(benchmark::kMicrosecond);

void BM_SymmetrySlope(benchmark::State& st) {
    const auto& e = catalog_entry("soliton");
    const auto pts = grid_points({e.grid.center, 1.0, 3});
    const auto g = generator_list(3)[2];
    for (auto _ : st) benchmark::DoNotOptimize(infinitesimal_symmetry_order(g, e.solution, pts));
}
BENCHMARK(BM_SymmetrySlope)->Unit(benchmark::kMillisecond);

void BM_TopologicalCharge(benchmark::State& st) {
    const SolutionEvaluator ev(AffineSolution::from_strings({"xi"}));
    for (auto _ : st) benchmark::DoNotOptimize(topological_charge(ev, int(st.range(0)), 2));
}
BENCHMARK(BM_TopologicalCharge)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CatalogVerify(benchmark::State& st) {
    for (auto _ : st)
        for (const auto& e : builtin_catalog()) benchmark::DoNotOptimize(verify_entry(e));
}
BENCHMARK(BM_CatalogVerify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
