#pragma once

#include "rsg/bayes.hpp"
#include "rsg/signaling.hpp"

namespace testsupport {

// The bundled two-commuter game, built in memory. Complete 3-node network,
// both players start at node 1, horizon 4, capacity 2. C = 1-2-3-1 detours
// past the vehicle's node, D = 1-1-3-1 idles at home first. State "0" has
// no vehicle, state "1" one vehicle at node 2. Non-loop edges cost 8/6/1 by
// occupancy, loops are free.
//
// With direct_matrices the per-state costs are pinned to the canonical
// matrices (state 0 charges strategy C 20 rather than the simulated 24).
inline rsg::BayesianGame example_game(bool direct_matrices) {
  rsg::BayesianGame game;
  game.base.player_count = 2;
  game.base.vehicle_count = 0;
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

  rsg::GameState x0;
  x0.label = "0";
  x0.instance = {0, {}, {}};
  rsg::GameState x1;
  x1.label = "1";
  x1.instance = {1, {2}, {}};
  if (direct_matrices) {
    x0.direct = rsg::CostMatrix{{2, 2}, {{20, 20}, {20, 16}, {16, 20}, {16, 16}}};
    x1.direct = rsg::CostMatrix{{2, 2}, {{10, 10}, {15, 9}, {9, 15}, {16, 16}}};
  }
  game.states = {x0, x1};
  game.priors = {{0.5, 0.5}, {0.5, 0.5}};
  return game;
}

// The fixed comparison policy shipped with the bundled scenario: state 0
// recommends (D,D); state 1 mixes (C,C) at 0.06 with (C,D)/(D,C) at 0.47.
inline rsg::SignalingPolicy reference_policy() {
  rsg::SignalingPolicy policy;
  policy.shape = {2, 2};
  policy.sigma = {{0, 0, 0, 1}, {0.06, 0.47, 0.47, 0}};
  return policy;
}

} // namespace testsupport
