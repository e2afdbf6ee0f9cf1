#include <doctest.h>

#include <stdexcept>

#include <set>

#include "rsg/engine.hpp"
#include "support/example_game.hpp"
#include "support/random_games.hpp"

using rsg::Edge;
using rsg::StateInstance;

namespace {

rsg::GameDefinition base_game() { return testsupport::example_game(false).base; }

StateInstance no_vehicle_state() {
  StateInstance s;
  s.vehicle_count = 0;
  return s;
}

StateInstance one_vehicle_state() {
  StateInstance s;
  s.vehicle_count = 1;
  s.vehicle_starts = {2};
  return s;
}

} // namespace

TEST_CASE("edge cost reads the occupancy column") {
  const rsg::EdgeCostTable table{2, {8, 6, 1}};
  CHECK(rsg::edge_cost(table, 0) == 8);
  CHECK(rsg::edge_cost(table, 1) == 6);
  CHECK(rsg::edge_cost(table, 2) == 1);
  CHECK_THROWS_WITH_AS((void)rsg::edge_cost(table, 3),
                       "edge_cost: occupancy 3 violates capacity 2", std::invalid_argument);
}

TEST_CASE("one shared vehicle reproduces the known per-profile costs") {
  const auto game = base_game();
  const auto state = one_vehicle_state();
  auto costs = [&](int a, int b) { return rsg::simulate_day(game, {a, b}, state).costs; };

  // Every non-loop edge prices {walk 8, ride alone 6, ride shared 1}.
  const auto cc = costs(0, 0); // both walk 1-2, then share the vehicle twice
  CHECK(cc.per_player == std::vector<double>{10, 10});
  CHECK(cc.system == 20);

  const auto cd = costs(0, 1); // 8+6+1 against 0+8+1
  CHECK(cd.per_player == std::vector<double>{15, 9});
  CHECK(cd.system == 24);

  const auto dc = costs(1, 0);
  CHECK(dc.per_player == std::vector<double>{9, 15});

  const auto dd = costs(1, 1); // nobody reaches the vehicle at node 2
  CHECK(dd.per_player == std::vector<double>{16, 16});
}

TEST_CASE("with no vehicle every leg is walked") {
  const auto game = base_game();
  const auto state = no_vehicle_state();
  auto costs = [&](int a, int b) { return rsg::simulate_day(game, {a, b}, state).costs; };

  // 1-2-3-1 walks three legs at 8; 1-1-3-1 waits once and walks two.
  CHECK(costs(0, 0).per_player == std::vector<double>{24, 24});
  CHECK(costs(0, 1).per_player == std::vector<double>{24, 16});
  CHECK(costs(1, 0).per_player == std::vector<double>{16, 24});
  CHECK(costs(1, 1).per_player == std::vector<double>{16, 16});
}

TEST_CASE("trace records the vehicle walk and occupancy") {
  const auto game = base_game();
  const auto result = rsg::simulate_day(game, {0, 1}, one_vehicle_state());
  const auto& trace = result.trace;

  REQUIRE(trace.vehicle_positions.size() == 1);
  CHECK(trace.vehicle_positions[0] == std::vector<int>{2, 2, 3, 1});
  REQUIRE(trace.occupancy.size() == 1);
  CHECK(trace.occupancy[0] == std::vector<int>{0, 1, 2});

  REQUIRE(trace.assignment.size() == 2);
  // Player 1 boards at node 2 after walking there; player 2 joins at node 3.
  CHECK(trace.assignment[0] ==
        std::vector<std::optional<int>>{std::nullopt, std::optional<int>{0},
                                        std::optional<int>{0}});
  CHECK(trace.assignment[1] ==
        std::vector<std::optional<int>>{std::nullopt, std::nullopt, std::optional<int>{0}});
}

TEST_CASE("boarding groups players by edge and fills vehicles in order") {
  const int capacity = 2;

  SUBCASE("no players at a vehicle node") {
    const auto a = rsg::step_allocation({1, 1}, {{1, 2}, {1, 2}}, {3}, capacity);
    CHECK(a == std::vector<std::optional<int>>{std::nullopt, std::nullopt});
  }
  SUBCASE("two players share one vehicle") {
    const auto a = rsg::step_allocation({1, 1}, {{1, 2}, {1, 2}}, {1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{0, 0});
  }
  SUBCASE("larger group boards first") {
    const auto a =
        rsg::step_allocation({1, 1, 1}, {{1, 2}, {1, 3}, {1, 3}}, {1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{std::nullopt, 0, 0});
  }
  SUBCASE("equal groups break ties toward the smaller edge") {
    const auto a = rsg::step_allocation({1, 1}, {{1, 3}, {1, 2}}, {1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{std::nullopt, 0});
  }
  SUBCASE("capacity overflow walks, lowest player ids ride") {
    const auto a =
        rsg::step_allocation({1, 1, 1}, {{1, 2}, {1, 2}, {1, 2}}, {1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{0, 0, std::nullopt});
  }
  SUBCASE("vehicles are consumed in ascending id") {
    const auto a = rsg::step_allocation({1, 1, 1, 1},
                                        {{1, 2}, {1, 2}, {1, 2}, {1, 2}}, {1, 1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{0, 0, 1, 1});
  }
  SUBCASE("a second group takes the remaining vehicle") {
    const auto a = rsg::step_allocation({1, 1, 1}, {{1, 2}, {1, 2}, {1, 3}}, {1, 1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{0, 0, 1});
  }
  SUBCASE("players at other nodes never board") {
    const auto a = rsg::step_allocation({2, 1}, {{2, 3}, {1, 2}}, {1}, capacity);
    CHECK(a == std::vector<std::optional<int>>{std::nullopt, 0});
  }
}

TEST_CASE("input validation names the offender") {
  const auto game = base_game();
  CHECK_THROWS_WITH_AS(
      (void)rsg::simulate_day(game, {0, 5}, one_vehicle_state()),
      "simulate_day: player 2 has no strategy with index 5", std::invalid_argument);
  CHECK_THROWS_AS((void)rsg::simulate_day(game, {0}, one_vehicle_state()),
                  std::invalid_argument);

  StateInstance bad;
  bad.vehicle_count = 1;
  bad.vehicle_starts = {2, 3};
  CHECK_THROWS_WITH_AS((void)rsg::simulate_day(game, {0, 0}, bad),
                       "simulate_day: state lists 2 starts for 1 vehicles",
                       std::invalid_argument);

  CHECK_THROWS_AS((void)rsg::step_allocation({1, 1}, {{1, 2}}, {1}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)rsg::step_allocation({1}, {{2, 3}}, {}, 2), std::invalid_argument);
}

TEST_CASE("simulation is deterministic") {
  const auto game = base_game();
  const auto a = rsg::simulate_day(game, {0, 1}, one_vehicle_state());
  const auto b = rsg::simulate_day(game, {0, 1}, one_vehicle_state());
  CHECK(a.costs.per_player == b.costs.per_player);
  CHECK(a.trace.vehicle_positions == b.trace.vehicle_positions);
  CHECK(a.trace.assignment == b.trace.assignment);
}

TEST_CASE("random days keep every trace invariant") {
  std::mt19937_64 rng(20250815);
  for (int round = 0; round < 200; ++round) {
    const auto c = testsupport::random_simulation(rng);
    const auto& game = c.game;
    const auto result = rsg::simulate_day(game, c.profile, c.state);
    const auto& trace = result.trace;
    const int periods = game.horizon - 1;

    REQUIRE(static_cast<int>(trace.assignment.size()) == game.player_count);
    REQUIRE(static_cast<int>(trace.vehicle_positions.size()) == c.state.vehicle_count);

    for (int m = 0; m < c.state.vehicle_count; ++m) {
      const auto& pos = trace.vehicle_positions[static_cast<std::size_t>(m)];
      REQUIRE(static_cast<int>(pos.size()) == game.horizon);
      CHECK(pos.front() == c.state.vehicle_starts[static_cast<std::size_t>(m)]);
      for (int t = 0; t < periods; ++t) {
        // A vehicle either idles on its loop or is pulled along a real edge.
        CHECK(game.network.has_edge(pos[static_cast<std::size_t>(t)],
                                    pos[static_cast<std::size_t>(t) + 1]));
        const int occ = trace.occupancy[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)];
        CHECK(occ >= 0);
        CHECK(occ <= game.capacity);
        if (occ == 0)
          CHECK(pos[static_cast<std::size_t>(t)] == pos[static_cast<std::size_t>(t) + 1]);
      }
    }

    double system = 0.0;
    for (int i = 0; i < game.player_count; ++i) {
      const auto& trip =
          game.strategy_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(
              c.profile[static_cast<std::size_t>(i)])];
      double day = 0.0;
      for (int t = 0; t < periods; ++t) {
        const Edge e = trip.edge_at(t);
        const auto ride = trace.assignment[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
        int occ = 0;
        if (ride) {
          const int m = *ride;
          // Boarding implies the vehicle moves with the rider.
          CHECK(trace.vehicle_positions[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)] ==
                e.from);
          CHECK(trace.vehicle_positions[static_cast<std::size_t>(m)]
                                       [static_cast<std::size_t>(t) + 1] == e.to);
          occ = trace.occupancy[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)];
          CHECK(occ >= 1);
        }
        day += game.cost_tables.at(e).at(occ);
      }
      CHECK(result.costs.per_player[static_cast<std::size_t>(i)] == doctest::Approx(day));
      system += day;
    }
    CHECK(result.costs.system == doctest::Approx(system));

    // Occupancy equals the number of players assigned to the vehicle.
    for (int t = 0; t < periods; ++t)
      for (int m = 0; m < c.state.vehicle_count; ++m) {
        int riders = 0;
        for (int i = 0; i < game.player_count; ++i) {
          const auto ride =
              trace.assignment[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
          if (ride && *ride == m) ++riders;
        }
        CHECK(riders ==
              trace.occupancy[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)]);
      }
  }
}
