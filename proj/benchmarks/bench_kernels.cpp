#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "spraylab/effective.hpp"
#include "spraylab/measure.hpp"
#include "spraylab/pnsk.hpp"
#include "spraylab/tridiagonal.hpp"

using namespace spraylab;

namespace {

PressureLaw const law = PressureLaw::isentropic(1.4, 1.0, 1.0);

FluidState smooth_state(const Grid1D& g)
{
    FluidState s;
    s.rho.resize(g.n_cells());
    s.c.assign(g.n_cells(), 1.5);
    s.u.assign(g.n_faces(), 0.0);
    for (std::size_t i = 0; i < g.n_cells(); ++i)
        s.rho[i] = 1.5 + 0.3 * std::cos(M_PI * g.center(i));
    for (std::size_t j = 1; j + 1 < g.n_faces(); ++j)
        s.u[j] = 0.2 * std::sin(M_PI * g.face(j));
    return s;
}

AtomicMeasure random_measure(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.1, 3.0);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < n; ++k)
        atoms.push_back({w(rng), pos(rng)});
    AtomicMeasure m(atoms);
    m.renormalize();
    return m;
}

}  // namespace

static void BM_Tridiagonal(benchmark::State& state)
{
    auto const n = static_cast<std::size_t>(state.range(0));
    std::vector<double> lower(n, -1.0), diag(n, 4.0), upper(n, -1.0), rhs(n, 1.0), x(n);
    for (auto _ : state)
    {
        solve_tridiagonal(lower, diag, upper, rhs, x);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Tridiagonal)->RangeMultiplier(4)->Range(256, 4096);

static void BM_StepPnsk(benchmark::State& state)
{
    Grid1D const g(static_cast<std::size_t>(state.range(0)), 1.0);
    Params const params;
    auto const s = smooth_state(g);
    double const dt = stable_dt(g, s.rho, s.u, law, params);
    for (auto _ : state)
        benchmark::DoNotOptimize(step_pnsk(g, s, law, params, dt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepPnsk)->RangeMultiplier(4)->Range(256, 4096);

static void BM_ReactMeasure(benchmark::State& state)
{
    Params const params;
    auto const m = random_measure(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(react_measure(m, 0.1, law, params, 1e-4));
}
BENCHMARK(BM_ReactMeasure)->Arg(2)->Arg(16)->Arg(64);

static void BM_Compress(benchmark::State& state)
{
    auto const m = random_measure(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(compress(m, 0.0, 64));
}
BENCHMARK(BM_Compress)->Arg(96)->Arg(128)->Arg(256);

static void BM_StepEffective(benchmark::State& state)
{
    Grid1D const g(static_cast<std::size_t>(state.range(0)), 1.0);
    Params const params;
    auto const fluid = smooth_state(g);
    auto const s = uniform_state(g, AtomicMeasure({{0.5, 0.2}, {0.5, 2.0}}), fluid.u, fluid.c, law);
    double const dt = effective_stable_dt(g, s, law, params);
    for (auto _ : state)
        benchmark::DoNotOptimize(step_effective(g, s, law, params, dt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepEffective)->Arg(256)->Arg(1024);
BENCHMARK_MAIN();
