#pragma once

#include <optional>
#include <vector>

#include "rsg/model.hpp"

namespace rsg {

// One realization of the world: which vehicles exist and where everyone
// starts. player_starts may be left empty to inherit the game's.
struct StateInstance {
  int vehicle_count = 0;
  std::vector<int> vehicle_starts;
  std::vector<int> player_starts;
};

// Full record of one simulated day. Periods are 0..T-2 (the move from node
// t to node t+1); vehicle positions cover times 0..T-1.
struct AllocationTrace {
  std::vector<std::vector<std::optional<int>>> assignment; // [player][period] -> vehicle
  std::vector<std::vector<int>> vehicle_positions;         // [vehicle][time] -> node
  std::vector<std::vector<int>> occupancy;                 // [vehicle][period]
};

struct CostVector {
  std::vector<double> per_player;
  double system = 0.0;
};

struct DayResult {
  AllocationTrace trace;
  CostVector costs;
};

// Table lookup; occupancy 0 is walking. Throws on occupancy > capacity.
double edge_cost(const EdgeCostTable& table, int occupancy);

// Boarding for one period. At each node that holds vehicles, players are
// grouped by chosen edge; groups board in order of size (largest first,
// ties by lexicographically smaller edge), vehicles are consumed in
// ascending id and each takes up to `capacity` players of the current
// group in ascending player id. Everyone left over walks.
std::vector<std::optional<int>> step_allocation(const std::vector<int>& player_nodes,
                                                const std::vector<Edge>& chosen_edges,
                                                const std::vector<int>& vehicle_nodes,
                                                int capacity);

// Plays out one day under the given joint strategy (indices into the
// game's strategy sets) and world state. Deterministic.
DayResult simulate_day(const GameDefinition& game, const Profile& profile,
                       const StateInstance& state);

double system_cost(const CostVector& costs);

} // namespace rsg
