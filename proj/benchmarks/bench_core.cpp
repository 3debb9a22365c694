#include "naqgt/dynamics.hpp"
#include "naqgt/qgt.hpp"
#include "naqgt/slab.hpp"
#include "naqgt/spectral.hpp"
#include "naqgt/topology.hpp"

#include <benchmark/benchmark.h>

using namespace naqgt;

namespace {

ModelSpec lattice(Family f)
{
    ModelSpec s;
    s.family = f;
    return s;
}

void bm_ground_states(benchmark::State& state)
{
    const ModelSpec s = lattice(Family::c2t_lattice);
    const Vec3 k(0.3, -1.1, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(ground_states(s, k));
}
BENCHMARK(bm_ground_states);

void bm_qgt_block(benchmark::State& state)
{
    const ModelSpec s = lattice(Family::cp_lattice);
    const Vec3 k(0.3, -1.1, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(qgt_block(s, k, 0, 1));
}
BENCHMARK(bm_qgt_block);

void bm_chern_grid(benchmark::State& state)
{
    const ModelSpec s = lattice(Family::cp_lattice);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(chern_number(s, 0.0, grid, Method::plaquette_oracle, 1));
}
BENCHMARK(bm_chern_grid)->Arg(51)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

void bm_evolve(benchmark::State& state)
{
    const ModelSpec s = lattice(Family::cp_lattice);
    const RampSchedule r = RampSchedule::landing(Vec3(0.5, 0.5, 0.0), {true, true, false}, 0.1);
    const Vec4 psi0 = prepare_initial(s, r.start, InitialState::one, GaugeMode::complex_phase);
    for (auto _ : state) benchmark::DoNotOptimize(evolve(s, r, psi0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(r.t_final() / default_dt));
}
BENCHMARK(bm_evolve)->Unit(benchmark::kMillisecond);

void bm_slab_spectrum(benchmark::State& state)
{
    const ModelSpec s = lattice(Family::cp_lattice);
    const int ny = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(slab_spectrum(s, 1, ny, Vec3(0.2, 0.0, 0.0)));
}
BENCHMARK(bm_slab_spectrum)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
