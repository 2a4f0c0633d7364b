// Microbenchmarks for the hot paths: generator assembly, propagator
// construction, per-step map application and the figure-of-merit metrics.
//
// Run with e.g.  ./qsync_bench --benchmark_min_time=0.2

#include <benchmark/benchmark.h>

#include <random>

#include "qsync/cavity.hpp"
#include "qsync/config.hpp"
#include "qsync/lindblad.hpp"
#include "qsync/metrics.hpp"
#include "qsync/operators.hpp"
#include "qsync/qml.hpp"

using namespace qsync;

namespace {

CavityModelParams cavity_point(int n_fock) {
    CavityModelParams p = preset_config(ExperimentKind::fig2).cavity;
    p.n_fock = n_fock;
    return p;
}

DensityMatrix cavity_state(int n_fock) {
    const HilbertLayout layout = cavity_layout(n_fock);
    return DensityMatrix::from_pure(cavity_initial_state(layout));
}

DensityMatrix qml_state() {
    return DensityMatrix::from_pure(
        product_state(qml_layout(), {excited_ket(), ground_ket(), ground_ket()}));
}

void BM_build_cavity_liouvillian(benchmark::State& state) {
    const int n_fock = static_cast<int>(state.range(0));
    const CavityModelParams p = cavity_point(n_fock);
    const HilbertLayout layout = cavity_layout(n_fock);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_cavity_liouvillian(p, layout));
    }
}
BENCHMARK(BM_build_cavity_liouvillian)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_cavity_propagator_expm(benchmark::State& state) {
    const int n_fock = static_cast<int>(state.range(0));
    const CavityModelParams p = cavity_point(n_fock);
    const SuperOperator L = build_cavity_liouvillian(p, cavity_layout(n_fock));
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagator(L, 0.01));
    }
}
BENCHMARK(BM_cavity_propagator_expm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_trotter_step_apply(benchmark::State& state) {
    const int n_fock = static_cast<int>(state.range(0));
    const Schedule step = build_da_schedule(cavity_point(n_fock), 0.01);
    Matrix rho = cavity_state(n_fock).matrix();
    for (auto _ : state) {
        rho = step.apply_raw(rho);
        benchmark::DoNotOptimize(rho.data());
    }
}
BENCHMARK(BM_trotter_step_apply)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_qml_iteration(benchmark::State& state) {
    const QubitModelParams p = preset_config(ExperimentKind::fig5).qubits;
    const Schedule step = build_qml_step(p, 0.01);
    const FeedbackPolicy policy;
    DensityMatrix rho = qml_state();
    for (auto _ : state) {
        rho = feedback_channel(step.apply(rho), policy);
        benchmark::DoNotOptimize(rho.matrix().data());
    }
}
BENCHMARK(BM_qml_iteration)->Unit(benchmark::kMicrosecond);

void BM_partial_trace(benchmark::State& state) {
    const int n_fock = static_cast<int>(state.range(0));
    const DensityMatrix rho = cavity_state(n_fock);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace_raw(rho.matrix(), rho.layout(), {"q1", "q2"}));
    }
}
BENCHMARK(BM_partial_trace)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_mutual_information(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix g(8, 8);
    for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) g(i, j) = Complex(dist(rng), dist(rng));
    Matrix m = g * g.adjoint();
    const DensityMatrix rho(Matrix(m / m.trace().real()), qml_layout());
    for (auto _ : state) {
        benchmark::DoNotOptimize(mutual_information(rho, {"A"}, {"E"}));
    }
}
BENCHMARK(BM_mutual_information)->Unit(benchmark::kMicrosecond);

void BM_fidelity(benchmark::State& state) {
    const int n_fock = static_cast<int>(state.range(0));
    const CavityModelParams p = cavity_point(n_fock);
    const SuperOperator L = build_cavity_liouvillian(p, cavity_layout(n_fock));
    const DensityMatrix a = cavity_state(n_fock);
    const DensityMatrix b = propagate_expm(L, a, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity(a, b));
    }
}
BENCHMARK(BM_fidelity)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_sweep_cell(benchmark::State& state) {
    QubitModelParams p = preset_config(ExperimentKind::fig4).qubits;
    p.delta_a = 2.0;
    p.J2 = 20.0;
    const FeedbackPolicy policy;
    const DensityMatrix rho0 = qml_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_qml(p, 3.0, 300, true, policy, rho0));
    }
}
BENCHMARK(BM_sweep_cell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
