#include <benchmark/benchmark.h>

#include <random>

#include "sudoku/solver.hpp"
#include "sudoku/thin_box.hpp"

using namespace sudoku;

namespace {

Shape shape_arg(const benchmark::State& state) {
    return Shape((int)state.range(0), (int)state.range(1));
}

void BM_build_M(benchmark::State& state) {
    Shape sh = shape_arg(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_M(sh, MBuildMethod::kronecker_blocks));
}
BENCHMARK(BM_build_M)->Args({2, 3})->Args({3, 3})->Args({3, 4})->Args({4, 4});

void BM_classify_pair(benchmark::State& state) {
    Shape sh = shape_arg(state);
    int E = sh.edge_count();
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> d(0, E - 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_pair(sh, d(rng), d(rng)));
}
BENCHMARK(BM_classify_pair)->Args({3, 3})->Args({4, 4});

void BM_apply_M(benchmark::State& state) {
    Shape sh = shape_arg(state);
    Eigen::VectorXd x = Eigen::VectorXd::Random(sh.edge_count());
    for (auto _ : state) benchmark::DoNotOptimize(apply_M(sh, x));
}
BENCHMARK(BM_apply_M)->Args({3, 3})->Args({4, 4});

void BM_workspace(benchmark::State& state) {
    Shape sh = shape_arg(state);
    for (auto _ : state) {
        ShapeWorkspace ws(sh);
        benchmark::DoNotOptimize(ws.ainv_norm());
    }
}
BENCHMARK(BM_workspace)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_solve_direct(benchmark::State& state) {
    Shape sh = shape_arg(state);
    ShapeWorkspace ws(sh);
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> d(1, sh.n);
    PartialSudoku S(sh);
    while ((int)S.size() < 3) S.try_set(d(rng), d(rng), d(rng));
    for (auto _ : state) benchmark::DoNotOptimize(solve(S, ws));
}
BENCHMARK(BM_solve_direct)->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_solve_neumann(benchmark::State& state) {
    Shape sh = shape_arg(state);
    ShapeWorkspace ws(sh);
    PartialSudoku S(sh);
    S.set(1, 1, 1);
    SolveOptions opts;
    opts.method = SolveOptions::Method::neumann;
    for (auto _ : state) benchmark::DoNotOptimize(solve(S, ws, opts));
}
BENCHMARK(BM_solve_neumann)->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_certified_rank(benchmark::State& state) {
    Shape sh = shape_arg(state);
    for (auto _ : state) benchmark::DoNotOptimize(certified_rank(sh));
}
BENCHMARK(BM_certified_rank)->Args({3, 3})->Args({4, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
