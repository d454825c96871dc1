// Microbenchmarks for the core group-operation paths.
//
// Each benchmark exercises one hot path in isolation:
//   * collected multiplication in a polycyclic group,
//   * full multiplication-table materialization,
//   * the twisted product at a fixed level,
//   * isomorphism testing (invariant gate and full search),
//   * string-of-groups construction.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include <twine/catalog.hpp>
#include <twine/invariants.hpp>
#include <twine/table_group.hpp>
#include <twine/twist.hpp>

namespace {

std::vector<std::pair<twine::Element, twine::Element>> random_pairs(const twine::Group& g,
                                                                    std::size_t count,
                                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    std::vector<std::pair<twine::Element, twine::Element>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.emplace_back(g.element_at(pick(rng)), g.element_at(pick(rng)));
    }
    return out;
}

void bm_pc_multiply(benchmark::State& state) {
    const auto g = twine::heisenberg(3, 2);  // order 729, three generators
    const auto pairs = random_pairs(*g, 256, 0x5eed);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 255];
        benchmark::DoNotOptimize(g->multiply(a, b));
    }
}
BENCHMARK(bm_pc_multiply);

void bm_materialize_table(benchmark::State& state) {
    const auto g = twine::heisenberg(3, 1);  // order 27
    for (auto _ : state) {
        benchmark::DoNotOptimize(twine::materialize_table(*g));
    }
}
BENCHMARK(bm_materialize_table);

void bm_twisted_multiply(benchmark::State& state) {
    const auto g = twine::heisenberg(3, 2);
    const auto pairs = random_pairs(*g, 256, 0x7ade);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 255];
        benchmark::DoNotOptimize(twine::twisted_multiply(*g, a, b, 4));
    }
}
BENCHMARK(bm_twisted_multiply);

void bm_iso_invariant_gate(benchmark::State& state) {
    // Same order structure, separated by a computed invariant: no search runs.
    const auto a = twine::burnside_group('D', 3);
    const auto b = twine::burnside_group('E', 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(twine::is_isomorphic(a, b));
    }
}
BENCHMARK(bm_iso_invariant_gate);

void bm_iso_search(benchmark::State& state) {
    // Isomorphic pair that requires an actual generator-mapping search.
    const auto a = twine::heisenberg(3, 1);
    const auto b = twine::materialize_table(*twine::heisenberg(3, 1));
    const twine::GroupPtr bp = b;
    for (auto _ : state) {
        benchmark::DoNotOptimize(twine::is_isomorphic(a, bp));
    }
}
BENCHMARK(bm_iso_search);

void bm_string_of(benchmark::State& state) {
    const auto g = twine::heisenberg(3, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(twine::string_of(g));
    }
}
BENCHMARK(bm_string_of);

}  // namespace

BENCHMARK_MAIN();
