// bench_core.cpp — Block construction, diagonalization and 2D signal throughput

#include <benchmark/benchmark.h>

#include <string>

#include "corepol/corepol.hpp"

using namespace corepol;

namespace {

const ModelBundle& bundled() {
    static const ModelBundle b = load_model(std::string(COREPOL_DATA_DIR) + "/difluoroethylene.toml");
    return b;
}

CavityConfig coupled(int n_molecules) {
    CavityConfig cav = bundled().cavity;
    cav.g_ev_per_debye = 2.45;
    cav.n_molecules = n_molecules;
    return cav;
}

}  // namespace

// Basis enumeration plus the m = 2 block; its size grows with N while pair states are kept.
void BM_BuildBlock2(benchmark::State& state) {
    const auto cav = coupled(int(state.range(0)));
    for (auto _ : state) {
        const auto basis = enumerate_basis(bundled().molecule, cav, 2);
        benchmark::DoNotOptimize(build_block(bundled().molecule, cav, basis, 2));
    }
    state.counters["dim"] = double(enumerate_basis(bundled().molecule, cav, 2).dim(2));
}
BENCHMARK(BM_BuildBlock2)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_SolvePolaritons(benchmark::State& state) {
    const auto cav = coupled(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_polaritons(bundled().molecule, cav, 2));
}
BENCHMARK(BM_SolvePolaritons)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PhotonEcho512(benchmark::State& state) {
    const auto p = solve_polaritons(bundled().molecule, coupled(int(state.range(0))), 2);
    const auto set = enumerate_pathways(p, SignalKind::PhotonEcho, PulseFilter{}, bundled().lineshape);
    const auto axis = default_one_quantum_axis();
    for (auto _ : state) benchmark::DoNotOptimize(pe_signal(set, 0.0, axis, axis));
    state.counters["pathways"] = double(set.pathways.size());
}
BENCHMARK(BM_PhotonEcho512)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Dqc21_512(benchmark::State& state) {
    const auto p = solve_polaritons(bundled().molecule, bundled().cavity, 2);
    const auto set = enumerate_pathways(p, SignalKind::DoubleQuantum, PulseFilter{}, bundled().lineshape);
    const auto one = default_one_quantum_axis(), two = default_two_quantum_axis();
    for (auto _ : state) benchmark::DoNotOptimize(dqc_signal_21(set, units::kDqcDefaultDelay, one, two));
}
BENCHMARK(BM_Dqc21_512)->Unit(benchmark::kMillisecond);

void BM_FftPhotonEcho(benchmark::State& state) {
    const auto p = solve_polaritons(bundled().molecule, bundled().cavity, 2);
    const auto set = enumerate_pathways(p, SignalKind::PhotonEcho, PulseFilter{}, bundled().lineshape);
    for (auto _ : state)
        benchmark::DoNotOptimize(signal_2d_fft(set, Projection::PE_T1T3, 0.0, FftSampling{}, {280, 298}, {280, 298}));
}
BENCHMARK(BM_FftPhotonEcho)->Unit(benchmark::kMillisecond);

void BM_Xanes(benchmark::State& state) {
    const auto cav = coupled(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(xanes(bundled().molecule, cav, bundled().lineshape, default_xanes_grid()));
}
BENCHMARK(BM_Xanes)->Arg(1)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
