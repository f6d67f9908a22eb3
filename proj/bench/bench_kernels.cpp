// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "cdok/boolmat.hpp"
#include "cdok/estar.hpp"
#include "cli/generators.hpp"

using namespace cdok;

namespace {

BitMatrix random_bits(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution on(density);
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (on(rng)) m.set(i, j);
        }
    }
    return m;
}

template <class Kernel>
void product(benchmark::State& state, Kernel kernel) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const BitMatrix a = random_bits(n, n, 0.05, 1);
    const BitMatrix b = random_bits(n, n, 0.05, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(a, b));
    state.SetComplexityN(state.range(0));
}

void mul_packed(benchmark::State& s) { product(s, [](const auto& a, const auto& b) { return mul(a, b); }); }
void mul_serial(benchmark::State& s) { product(s, [](const auto& a, const auto& b) { return serial::mul(a, b); }); }
void witness_packed(benchmark::State& s) {
    product(s, [](const auto& a, const auto& b) { return mul_with_witness(a, b); });
}
void witness_serial(benchmark::State& s) {
    product(s, [](const auto& a, const auto& b) { return serial::mul_with_witness(a, b); });
}

void estar_build(benchmark::State& state, const BoolMultiplier& m) {
    const auto s = normalize(gen::points({gen::Shape::adversarial_heavy, 20000, 200, 400000, 3}));
    const auto params = EStarParams::make(0.5, 100, 200, s.universe_size());
    const auto heavy = classify_colors(s, params.tau).heavy;
    for (auto _ : state) benchmark::DoNotOptimize(construct_estar(s, heavy, params, {}, &m));
}

void estar_packed(benchmark::State& s) { estar_build(s, PackedMultiplier{}); }
void estar_serial(benchmark::State& s) { estar_build(s, SerialMultiplier{}); }

}

BENCHMARK(mul_packed)->RangeMultiplier(2)->Range(128, 1024)->Complexity();
BENCHMARK(mul_serial)->RangeMultiplier(2)->Range(128, 1024)->Complexity();
BENCHMARK(witness_packed)->RangeMultiplier(2)->Range(128, 512);
BENCHMARK(witness_serial)->RangeMultiplier(2)->Range(128, 512);
BENCHMARK(estar_packed)->Unit(benchmark::kMillisecond);
BENCHMARK(estar_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
