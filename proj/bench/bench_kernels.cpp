// Serial reference vs OpenMP kernels: pivoted orthonormalization and
// Hilbert shift-matrix assembly.

#include <benchmark/benchmark.h>

#include <random>

#include "ellq/hilbert.hpp"
#include "ellq/linalg.hpp"
#include "ellq/parallel.hpp"

namespace {

ellq::CMatrix random_lowrank(int rows, int cols, int rank, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ellq::CMatrix A(rows, rank), B(rank, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rank; ++j)
            A(i, j) = ellq::cplx(u(gen), u(gen));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < cols; ++j)
            B(i, j) = ellq::cplx(u(gen), u(gen));
    return A * B;
}

const ellq::RelationSpace& bench_relation_space() {
    static const ellq::RelationSpace rel =
        ellq::relation_space(ellq::AlgebraParams(5, 2, ellq::cplx(0.1731, 0.2292),
                                                 ellq::cplx(0.0, 1.0)));
    return rel;
}

} // namespace

static void BM_OrthonormalSerial(benchmark::State& state) {
    const int m = int(state.range(0));
    const ellq::CMatrix A = random_lowrank(m, (3 * m) / 4, m / 2, 42);
    for (auto _ : state) {
        auto r = ellq::orthonormal_columns_serial(A);
        benchmark::DoNotOptimize(r.rank);
    }
}
BENCHMARK(BM_OrthonormalSerial)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_OrthonormalOpenMP(benchmark::State& state) {
    const int m = int(state.range(0));
    const ellq::CMatrix A = random_lowrank(m, (3 * m) / 4, m / 2, 42);
    ellq::set_parallel_enabled(true);
    for (auto _ : state) {
        auto r = ellq::orthonormal_columns(A);
        benchmark::DoNotOptimize(r.rank);
    }
}
BENCHMARK(BM_OrthonormalOpenMP)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_ShiftAssemblySerial(benchmark::State& state) {
    const auto& rel = bench_relation_space();
    for (auto _ : state) {
        auto A = ellq::assemble_shift_matrix_serial(rel, int(state.range(0)));
        benchmark::DoNotOptimize(A.rows());
    }
}
BENCHMARK(BM_ShiftAssemblySerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ShiftAssemblyOpenMP(benchmark::State& state) {
    const auto& rel = bench_relation_space();
    ellq::set_parallel_enabled(true);
    for (auto _ : state) {
        auto A = ellq::assemble_shift_matrix(rel, int(state.range(0)));
        benchmark::DoNotOptimize(A.rows());
    }
}
BENCHMARK(BM_ShiftAssemblyOpenMP)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_GradedDims(benchmark::State& state) {
    const auto& rel = bench_relation_space();
    for (auto _ : state) {
        auto g = ellq::graded_dims(rel, int(state.range(0)));
        benchmark::DoNotOptimize(g.dims.back());
    }
}
BENCHMARK(BM_GradedDims)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
