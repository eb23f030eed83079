#include "tpictm/convolution.hpp"
#include "tpictm/models.hpp"
#include "tpictm/solver.hpp"
#include "tpictm/synthetic.hpp"
#include "tpictm/topology.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace tpictm;

ScalarField random_field(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    ScalarField f(n, n);
    for (double& v : f.values) v = (rng() >> 11) * 0x1.0p-53;
    return f;
}

BinaryMask random_mask(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    BinaryMask m(n, n);
    for (auto& b : m.bits) b = (rng() & 1u) != 0;
    return m;
}

void BM_Convolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField field = random_field(n, 1);
    const HeatMultiplier mult = build_multiplier(0.001, n, n, 1.0 / n);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(field, mult));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Convolve)->Arg(64)->Arg(256)->Arg(512);

void BM_PerimeterEstimate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BinaryMask mask = random_mask(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(perimeter_estimate(mask, 1e-3));
}
BENCHMARK(BM_PerimeterEstimate)->Arg(256)->Arg(512);

void BM_IsSimpleSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BinaryMask mask = random_mask(n, 3);
    const SimplePointTable table(ConnectivityPair::four_eight());
    for (auto _ : state) {
        long simple = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) simple += table.simple(ring_code(mask, {r, c}));
        benchmark::DoNotOptimize(simple);
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_IsSimpleSweep)->Arg(256)->Arg(512);

void BM_LabelComponents(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BinaryMask mask = random_mask(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(label_components(mask, 4, true));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LabelComponents)->Arg(256)->Arg(512);

void BM_SolverIteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SyntheticSpec spec;
    spec.scene = "two-discs-line";
    spec.size = n;
    spec.sigma = 0.2;
    const SyntheticScene scene = generate(spec);
    BinaryMask u0(n, n);
    for (int r = n / 4; r < 3 * n / 4; ++r)
        for (int c = n / 8; c < 7 * n / 8; ++c) u0.set(r, c, 1);
    SolverParams params;
    params.tau1 = 0.001;
    params.tau2 = 0.001;
    params.lambda = 0.01;
    for (auto _ : state) {
        params.max_iter = static_cast<int>(state.range(1));
        benchmark::DoNotOptimize(run(scene.image, u0, FidelityModel::chan_vese, params));
    }
}
BENCHMARK(BM_SolverIteration)->Args({128, 5})->Args({256, 5});

}  // namespace

BENCHMARK_MAIN();
