#include <random>

#include <benchmark/benchmark.h>

#include "rsg/bayes.hpp"
#include "rsg/engine.hpp"
#include "rsg/equilibria.hpp"
#include "rsg/lp.hpp"
#include "rsg/signaling.hpp"

namespace {

// The bundled two-commuter game, rebuilt here so the benchmarks need no
// scenario directory at run time.
rsg::BayesianGame commuter_game() {
  rsg::BayesianGame game;
  game.base.player_count = 2;
  game.base.horizon = 4;
  game.base.capacity = 2;
  game.base.network = rsg::RoadNetwork::complete(3);
  game.base.player_starts = {1, 1};
  const rsg::Trip C{{1, 2, 3, 1}};
  const rsg::Trip D{{1, 1, 3, 1}};
  game.base.strategy_sets = {{C, D}, {C, D}};
  for (const rsg::Edge& e : game.base.network.edges)
    game.base.cost_tables[e] = e.from == e.to ? rsg::EdgeCostTable{2, {0, 0, 0}}
                                              : rsg::EdgeCostTable{2, {8, 6, 1}};
  game.strategy_labels = {{"C", "D"}, {"C", "D"}};
  game.states.resize(2);
  game.states[0].label = "0";
  game.states[0].instance = {0, {}, {}};
  game.states[1].label = "1";
  game.states[1].instance = {1, {2}, {}};
  game.priors = {{0.5, 0.5}, {0.5, 0.5}};
  return game;
}

// Larger symmetric game: n commuters on a complete network with every
// roundtrip available, stressing table building and the mediator program.
rsg::BayesianGame wide_game(int players) {
  rsg::BayesianGame game;
  game.base.player_count = players;
  game.base.horizon = 4;
  game.base.capacity = 2;
  game.base.network = rsg::RoadNetwork::complete(3);
  for (const rsg::Edge& e : game.base.network.edges)
    game.base.cost_tables[e] = e.from == e.to ? rsg::EdgeCostTable{2, {0, 0, 0}}
                                              : rsg::EdgeCostTable{2, {8, 6, 1}};
  const auto trips = rsg::enumerate_trips(game.base.network, 1, 1, {3}, 4);
  for (int i = 0; i < players; ++i) {
    game.base.player_starts.push_back(1);
    game.base.strategy_sets.push_back(trips);
  }
  game.states.resize(2);
  game.states[0].label = "0";
  game.states[0].instance = {0, {}, {}};
  game.states[1].label = "1";
  game.states[1].instance = {1, {2}, {}};
  game.priors.assign(static_cast<std::size_t>(players), {0.5, 0.5});
  return game;
}

void BM_SimulateDay(benchmark::State& state) {
  const auto game = commuter_game();
  const rsg::StateInstance world{1, {2}, {}};
  for (auto _ : state) {
    const auto day = rsg::simulate_day(game.base, {0, 1}, world);
    benchmark::DoNotOptimize(day.costs.system);
  }
}
BENCHMARK(BM_SimulateDay);

void BM_BuildStateTables(benchmark::State& state) {
  const auto game = wide_game(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto tables = rsg::build_state_tables(game);
    benchmark::DoNotOptimize(tables.size());
  }
}
BENCHMARK(BM_BuildStateTables)->Arg(2)->Arg(3);

void BM_PureBayesNash(benchmark::State& state) {
  const auto game = wide_game(static_cast<int>(state.range(0)));
  const auto tables = rsg::build_state_tables(game);
  for (auto _ : state) {
    const auto bne = rsg::pure_bayes_nash(game, tables);
    benchmark::DoNotOptimize(bne.size());
  }
}
BENCHMARK(BM_PureBayesNash)->Arg(2)->Arg(3);

void BM_SolveBce(benchmark::State& state) {
  const auto game = wide_game(static_cast<int>(state.range(0)));
  const auto tables = rsg::build_state_tables(game);
  for (auto _ : state) {
    const auto solution = rsg::solve_bce(game, tables);
    benchmark::DoNotOptimize(solution.value);
  }
}
BENCHMARK(BM_SolveBce)->Arg(2)->Arg(3);

void BM_SolveLp(benchmark::State& state) {
  // Fixed random program batch; the solver runs over all of them per tick.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  const int n = static_cast<int>(state.range(0));
  rsg::LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.objective.push_back(coeff(rng));
  for (int i = 0; i < n; ++i) {
    std::vector<double> row;
    for (int j = 0; j < n; ++j) row.push_back(coeff(rng));
    lp.le_lhs.push_back(std::move(row));
    lp.le_rhs.push_back(5.0 + std::abs(coeff(rng)));
  }
  for (auto _ : state) {
    const auto solution = rsg::solve_lp(lp);
    benchmark::DoNotOptimize(solution.status);
  }
}
BENCHMARK(BM_SolveLp)->Arg(4)->Arg(8)->Arg(16);

void BM_EnumerateTrips(benchmark::State& state) {
  const auto net = rsg::RoadNetwork::complete(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto trips = rsg::enumerate_trips(net, 1, 1, {2}, 5);
    benchmark::DoNotOptimize(trips.size());
  }
}
BENCHMARK(BM_EnumerateTrips)->Arg(3)->Arg(4)->Arg(5);

} // namespace

BENCHMARK_MAIN();
