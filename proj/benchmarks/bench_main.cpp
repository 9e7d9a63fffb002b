#include <benchmark/benchmark.h>

#include "susyqm/operators.hpp"
#include "susyqm/spectral.hpp"
#include "susyqm/superpotential.hpp"

namespace {

susyqm::Deformation make_deformation(double c) {
    return susyqm::Deformation(c, susyqm::BaseSuperpotential::harmonic(2.0));
}

void BM_AssembleDeformedHamiltonian(benchmark::State& state) {
    const susyqm::Grid grid = susyqm::make_grid(12.0, static_cast<int>(state.range(0)));
    const susyqm::Deformation d = make_deformation(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(susyqm::deformed_hamiltonian(d, -1, grid));
    }
}
BENCHMARK(BM_AssembleDeformedHamiltonian)->Arg(501)->Arg(1001)->Arg(2001);

void BM_FactorizedGram(benchmark::State& state) {
    const susyqm::Grid grid = susyqm::make_grid(12.0, static_cast<int>(state.range(0)));
    const susyqm::Deformation d = make_deformation(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(susyqm::A_matrices(d, grid));
    }
}
BENCHMARK(BM_FactorizedGram)->Arg(501)->Arg(1001);

void BM_EigenvaluesFullMatrix(benchmark::State& state) {
    const susyqm::Grid grid = susyqm::make_grid(12.0, static_cast<int>(state.range(0)));
    const susyqm::OperatorMatrix h =
        susyqm::deformed_hamiltonian(make_deformation(0.5), -1, grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(susyqm::eigenvalues_symmetric(h, 8));
    }
}
BENCHMARK(BM_EigenvaluesFullMatrix)->Arg(201)->Arg(501);

void BM_EigenvaluesSectorSplit(benchmark::State& state) {
    const susyqm::Grid grid = susyqm::make_grid(12.0, static_cast<int>(state.range(0)));
    const susyqm::OperatorMatrix h =
        susyqm::deformed_hamiltonian(make_deformation(0.5), -1, grid);
    for (auto _ : state) {
        for (int parity : {1, -1}) {
            const susyqm::OperatorMatrix sector = susyqm::sector_project(h, parity, grid);
            benchmark::DoNotOptimize(susyqm::eigenvalues_symmetric(sector, 8));
        }
    }
}
BENCHMARK(BM_EigenvaluesSectorSplit)->Arg(201)->Arg(501)->Arg(1001);

void BM_SolveLabeled(benchmark::State& state) {
    const susyqm::Grid grid = susyqm::make_grid(12.0, static_cast<int>(state.range(0)));
    const susyqm::OperatorMatrix h =
        susyqm::deformed_hamiltonian(make_deformation(0.5), -1, grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(susyqm::solve_labeled(h, grid, 6));
    }
}
BENCHMARK(BM_SolveLabeled)->Arg(201)->Arg(501);

} // namespace

BENCHMARK_MAIN();
