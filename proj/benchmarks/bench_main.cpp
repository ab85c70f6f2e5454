#include <benchmark/benchmark.h>

#include "rcrt/codec.hpp"
#include "rcrt/stats.hpp"

using namespace rcrt;

static void BM_RemainderChain(benchmark::State& state) {
    Int g1(233), g2(377);
    for (auto _ : state) {
        auto chain = remainder_chain(g1, g2);
        benchmark::DoNotOptimize(chain);
    }
}
BENCHMARK(BM_RemainderChain);

static void BM_DesignFlatL4(benchmark::State& state) {
    Rat rho(10000), m_max(100);
    for (auto _ : state) {
        auto set = design_flat(4, rho, m_max);
        benchmark::DoNotOptimize(set);
    }
}
BENCHMARK(BM_DesignFlatL4);

static void BM_DesignLayered(benchmark::State& state) {
    Rat rho(state.range(0));
    for (auto _ : state) {
        auto d = design_layered(rho, 6);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DesignLayered)->Arg(150)->Arg(100000);

static void BM_PairDecode(benchmark::State& state) {
    auto design = layered_from_pair(Int(233), Int(377), Rat(1));
    PairDecoder dec(design, static_cast<int>(state.range(0)));
    auto noisy = fold(design, 8000.0);
    noisy.residues[0] += 0.3;
    noisy.residues[1] -= 0.2;
    for (auto _ : state) {
        auto out = dec.decode(noisy);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_PairDecode)->Arg(1)->Arg(6)->Arg(11);

static void BM_DecodeLayeredAuto(benchmark::State& state) {
    auto design = layered_from_pair(Int(34), Int(47), Rat(1));
    auto noisy = fold(design, 200.0);
    noisy.residues[0] += 0.1;
    noisy.residues[1] -= 0.1;
    for (auto _ : state) {
        auto out = decode_layered(design, noisy);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_DecodeLayeredAuto);

static void BM_MonteCarlo1k(benchmark::State& state) {
    auto design = design_layered(Rat(15), 2, Rat(120));
    auto prior = SignalPrior::rayleigh(360.0);
    auto noise = NoiseModel::gaussian(1.0);
    for (auto _ : state) {
        auto mc = monte_carlo(design, prior, noise, 1000, 99);
        benchmark::DoNotOptimize(mc);
    }
}
BENCHMARK(BM_MonteCarlo1k);

BENCHMARK_MAIN();
