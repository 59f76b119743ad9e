#include <benchmark/benchmark.h>

#include "domino/bounds.hpp"
#include "domino/chains.hpp"
#include "domino/oracle.hpp"
#include "domino/prover.hpp"

namespace {

void BM_RandomPlayouts(benchmark::State& state) {
  for (auto _ : state) {
    auto stats = domino::run_random_playouts(domino::Rules::standard(),
                                             state.range(0), 1);
    benchmark::DoNotOptimize(stats.moves);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomPlayouts)->Arg(100)->Arg(1000);

void BM_EnumerateMinimalBoards(benchmark::State& state) {
  for (auto _ : state) {
    int boards = 0;
    domino::enumerate_blocked_boards(0, 10,
                                     [&](const auto&) { ++boards; });
    benchmark::DoNotOptimize(boards);
  }
}
BENCHMARK(BM_EnumerateMinimalBoards);

void BM_CountFullChains(benchmark::State& state) {
  for (auto _ : state) {
    auto n = domino::count_full_chains(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_CountFullChains)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_BoundTable(benchmark::State& state) {
  for (auto _ : state) {
    auto table = domino::bound_table();
    benchmark::DoNotOptimize(table[0].max_possible);
  }
}
BENCHMARK(BM_BoundTable);

void BM_SearchTopBand(benchmark::State& state) {
  for (auto _ : state) {
    auto r = domino::search_blocked_score(111);
    benchmark::DoNotOptimize(r.verdict);
  }
}
BENCHMARK(BM_SearchTopBand)->Unit(benchmark::kMillisecond);

void BM_ReducedCensus(benchmark::State& state) {
  auto rules = domino::Rules::reduced_two_player(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto census = domino::prover_blocked_census(rules);
    benchmark::DoNotOptimize(census.blocked_config_count);
  }
}
BENCHMARK(BM_ReducedCensus)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
