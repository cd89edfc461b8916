#include <benchmark/benchmark.h>

#include <numbers>

#include "gatedist/gatedist.hpp"

namespace {

using namespace gatedist;

void BM_EigUnitary(benchmark::State& state) {
    Rng rng(1);
    const ComplexMatrix u = random_unitary(rng, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_unitary(u));
    }
}
BENCHMARK(BM_EigUnitary)->RangeMultiplier(2)->Range(2, 64);

void BM_NcopyProbe(benchmark::State& state) {
    // Half-angle chosen so that N = ceil(pi / (2 delta)) equals range(0).
    const double delta = std::numbers::pi / (2.0 * static_cast<double>(state.range(0))) + 1e-9;
    const Gate u(ComplexMatrix(ComplexVector{{std::polar(1.0, delta), std::polar(1.0, -delta)}}.asDiagonal()), true);
    const Gate one = Gate::identity(2);
    for (auto _ : state) {
        const ProbeState probe = optimal_probe_ncopies(one, u);
        benchmark::DoNotOptimize(probe_overlap(one, u, probe, probe.copies()));
    }
}
BENCHMARK(BM_NcopyProbe)->RangeMultiplier(4)->Range(2, 512);

void BM_Oracle(benchmark::State& state) {
    Rng rng(2);
    const Gate a(random_special_unitary(rng, 2), true);
    const Gate b(random_special_unitary(rng, 2), true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_min_overlap(a, b, static_cast<int>(state.range(0)), 8, 3));
    }
}
BENCHMARK(BM_Oracle)->DenseRange(1, 4);

void BM_AvgFidelityMc(benchmark::State& state) {
    Rng rng(3);
    const Gate a(random_special_unitary(rng, 2), true);
    const Gate b(random_special_unitary(rng, 2), true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(avg_fidelity_mc(a, b, static_cast<std::size_t>(state.range(0)), 4));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AvgFidelityMc)->Arg(10000)->Arg(100000);

void BM_PlanElimination(benchmark::State& state) {
    Rng rng(5);
    std::vector<Gate> gates;
    for (int k = 0; k < state.range(0); ++k) {
        gates.emplace_back(random_special_unitary(rng, 2), true);
    }
    const HypothesisSet h(gates);
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan_elimination(h));
    }
}
BENCHMARK(BM_PlanElimination)->DenseRange(2, 5);

}  // namespace

// The packaged benchmark_main archive carries LTO objects from another
// compiler release, so the entry point is defined here.
BENCHMARK_MAIN();
