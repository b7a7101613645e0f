#include <benchmark/benchmark.h>

#include "vcg/game.hpp"
#include "vcg/graph.hpp"
#include "vcg/solver.hpp"
#include "vcg/strategy.hpp"

using namespace vcg;

static void BM_SampleGnp(benchmark::State& state) {
    int n = int(state.range(0));
    uint64_t seed = 0;
    for (auto _ : state) {
        Graph g = sample_gnp(n, 10.0 / double(n), seed++);
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_SampleGnp)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_NeighborsOfSet(benchmark::State& state) {
    int n = int(state.range(0));
    Graph g = sample_gnp(n, 0.1, 1);
    Bitset s{std::size_t(n)};
    for (int v = 0; v < n; v += 7) s.set(std::size_t(v));
    for (auto _ : state) benchmark::DoNotOptimize(neighbors_of_set(g, s).count());
}
BENCHMARK(BM_NeighborsOfSet)->Arg(1000)->Arg(5000);

static void BM_GreedyVsRandomGame(benchmark::State& state) {
    int n = int(state.range(0));
    Graph g = sample_gnp(n, 0.5, 3);
    int k = n / 4;
    uint64_t seed = 0;
    for (auto _ : state) {
        MakerGreedy maker(seed);
        RandomStrategy breaker(seed + 1);
        ++seed;
        GameOutcome out = play_game(g, k, maker, breaker);
        benchmark::DoNotOptimize(out.moves_played);
    }
}
BENCHMARK(BM_GreedyVsRandomGame)->Arg(200)->Arg(500);

static void BM_SolveFreshPosition(benchmark::State& state) {
    Graph g = sample_gnp(int(state.range(0)), 0.4, 5);
    for (auto _ : state) {
        GameState st(g, 3, Player::Maker);
        benchmark::DoNotOptimize(solve_position(st));
    }
}
BENCHMARK(BM_SolveFreshPosition)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
