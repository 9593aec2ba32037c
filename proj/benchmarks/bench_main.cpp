#include <benchmark/benchmark.h>

#include <cmath>

#include "bmofem/assembly.hpp"
#include "bmofem/bvp.hpp"
#include "bmofem/coeff.hpp"
#include "bmofem/hodge.hpp"
#include "bmofem/mesh.hpp"
#include "bmofem/solver.hpp"

namespace {

bmofem::VectorFieldFn sincos() {
    return [](const bmofem::Point& x) {
        return bmofem::Vec2(std::sin(M_PI * x.x()), std::cos(M_PI * x.y()));
    };
}

void BM_BuildMesh(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bmofem::build_uniform_mesh(level));
    }
    state.SetComplexityN(2L << (2 * level));
}
BENCHMARK(BM_BuildMesh)->DenseRange(4, 8, 2)->Complexity();

void BM_ProjectLogCoefficient(benchmark::State& state) {
    const auto mesh = bmofem::make_uniform_mesh(static_cast<int>(state.range(0)));
    const auto coeff = bmofem::log_singular_coefficient(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bmofem::project_coefficient(coeff, mesh, 1e-6));
    }
}
BENCHMARK(BM_ProjectLogCoefficient)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

void BM_AssembleStiffness(benchmark::State& state) {
    const auto mesh = bmofem::make_uniform_mesh(static_cast<int>(state.range(0)));
    const auto coeff_h = bmofem::project_coefficient(bmofem::checkerboard_coefficient(100.0), mesh, 1e-6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bmofem::assemble_stiffness(*mesh, coeff_h));
    }
}
BENCHMARK(BM_AssembleStiffness)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SolveCheckerboard(benchmark::State& state) {
    const auto mesh = bmofem::make_uniform_mesh(static_cast<int>(state.range(0)));
    const auto coeff_h = bmofem::project_coefficient(bmofem::checkerboard_coefficient(100.0), mesh, 1e-6);
    const auto flux_h = bmofem::project_rhs(sincos(), mesh, 1e-6);
    const bmofem::SparseSPDSystem system{bmofem::assemble_stiffness(*mesh, coeff_h),
                                         bmofem::assemble_rhs(*mesh, flux_h)};
    int iterations = 0;
    for (auto _ : state) {
        const auto result = bmofem::solve_spd(system);
        iterations = result.iterations;
        benchmark::DoNotOptimize(result.x.data());
    }
    state.counters["cg_iterations"] = iterations;
}
BENCHMARK(BM_SolveCheckerboard)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);

void BM_HodgeDecompose(benchmark::State& state) {
    const auto mesh = bmofem::make_uniform_mesh(static_cast<int>(state.range(0)));
    auto s = bmofem::project_rhs(sincos(), mesh, 1e-6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bmofem::hodge_decompose(s));
    }
}
BENCHMARK(BM_HodgeDecompose)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
