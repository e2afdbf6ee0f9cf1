#include "rsg/engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace rsg {

double edge_cost(const EdgeCostTable& table, int occupancy) { return table.at(occupancy); }

double system_cost(const CostVector& costs) {
  double total = 0.0;
  for (double c : costs.per_player) total += c;
  return total;
}

std::vector<std::optional<int>> step_allocation(const std::vector<int>& player_nodes,
                                                const std::vector<Edge>& chosen_edges,
                                                const std::vector<int>& vehicle_nodes,
                                                int capacity) {
  if (player_nodes.size() != chosen_edges.size())
    throw std::invalid_argument("step_allocation: player/edge count mismatch");
  for (std::size_t i = 0; i < player_nodes.size(); ++i)
    if (chosen_edges[i].from != player_nodes[i])
      throw std::invalid_argument("step_allocation: player " + std::to_string(i + 1) +
                                  " chose an edge that does not leave their node");

  std::vector<std::optional<int>> assignment(player_nodes.size());

  // Vehicles parked at each node, ascending id.
  std::map<int, std::vector<int>> vehicles_at;
  for (std::size_t m = 0; m < vehicle_nodes.size(); ++m)
    vehicles_at[vehicle_nodes[m]].push_back(static_cast<int>(m));

  for (auto& [node, vehicles] : vehicles_at) {
    // Group the players standing here by their chosen edge.
    std::map<Edge, std::vector<int>> groups;
    for (std::size_t i = 0; i < player_nodes.size(); ++i)
      if (player_nodes[i] == node) groups[chosen_edges[i]].push_back(static_cast<int>(i));
    if (groups.empty()) continue;

    std::vector<const std::pair<const Edge, std::vector<int>>*> order;
    for (const auto& g : groups) order.push_back(&g);
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
      if (a->second.size() != b->second.size()) return a->second.size() > b->second.size();
      return a->first < b->first;
    });

    std::size_t next_vehicle = 0;
    for (const auto* group : order) {
      std::size_t boarded = 0;
      while (boarded < group->second.size() && next_vehicle < vehicles.size()) {
        const int m = vehicles[next_vehicle++];
        for (int seat = 0; seat < capacity && boarded < group->second.size(); ++seat)
          assignment[static_cast<std::size_t>(group->second[boarded++])] = m;
      }
      if (next_vehicle == vehicles.size()) break;
    }
  }
  return assignment;
}

DayResult simulate_day(const GameDefinition& game, const Profile& profile,
                       const StateInstance& state) {
  const int n = game.player_count;
  if (static_cast<int>(profile.size()) != n)
    throw std::invalid_argument("simulate_day: profile has " + std::to_string(profile.size()) +
                                " entries for " + std::to_string(n) + " players");
  std::vector<const Trip*> trips(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& set = game.strategy_sets[static_cast<std::size_t>(i)];
    const int k = profile[static_cast<std::size_t>(i)];
    if (k < 0 || k >= static_cast<int>(set.size()))
      throw std::invalid_argument("simulate_day: player " + std::to_string(i + 1) +
                                  " has no strategy with index " + std::to_string(k));
    trips[static_cast<std::size_t>(i)] = &set[static_cast<std::size_t>(k)];
  }

  const int vehicles = state.vehicle_count;
  if (static_cast<int>(state.vehicle_starts.size()) != vehicles)
    throw std::invalid_argument("simulate_day: state lists " +
                                std::to_string(state.vehicle_starts.size()) + " starts for " +
                                std::to_string(vehicles) + " vehicles");
  for (int v : state.vehicle_starts)
    if (v < 1 || v > game.network.node_count)
      throw std::invalid_argument("simulate_day: vehicle start node " + std::to_string(v) +
                                  " not in the network");
  if (!state.player_starts.empty()) {
    if (static_cast<int>(state.player_starts.size()) != n)
      throw std::invalid_argument("simulate_day: state player starts do not match player count");
    for (int i = 0; i < n; ++i)
      if (state.player_starts[static_cast<std::size_t>(i)] !=
          trips[static_cast<std::size_t>(i)]->nodes.front())
        throw std::invalid_argument("simulate_day: player " + std::to_string(i + 1) +
                                    " strategy does not start at the state's start node");
  }

  const int periods = game.horizon - 1;
  DayResult result;
  result.trace.assignment.assign(static_cast<std::size_t>(n),
                                 std::vector<std::optional<int>>(
                                     static_cast<std::size_t>(periods)));
  result.trace.vehicle_positions.assign(static_cast<std::size_t>(vehicles), {});
  result.trace.occupancy.assign(static_cast<std::size_t>(vehicles),
                                std::vector<int>(static_cast<std::size_t>(periods), 0));
  result.costs.per_player.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<int> vehicle_nodes = state.vehicle_starts;
  for (int m = 0; m < vehicles; ++m)
    result.trace.vehicle_positions[static_cast<std::size_t>(m)].push_back(vehicle_nodes[static_cast<std::size_t>(m)]);

  std::vector<int> player_nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    player_nodes[static_cast<std::size_t>(i)] = trips[static_cast<std::size_t>(i)]->nodes.front();

  for (int t = 0; t < periods; ++t) {
    std::vector<Edge> chosen(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) chosen[static_cast<std::size_t>(i)] = trips[static_cast<std::size_t>(i)]->edge_at(t);

    const auto assignment = step_allocation(player_nodes, chosen, vehicle_nodes, game.capacity);

    std::vector<int> occupancy(static_cast<std::size_t>(vehicles), 0);
    for (int i = 0; i < n; ++i)
      if (assignment[static_cast<std::size_t>(i)])
        ++occupancy[static_cast<std::size_t>(*assignment[static_cast<std::size_t>(i)])];

    for (int i = 0; i < n; ++i) {
      const Edge e = chosen[static_cast<std::size_t>(i)];
      const auto table = game.cost_tables.find(e);
      if (table == game.cost_tables.end())
        throw std::invalid_argument("simulate_day: no cost table for edge (" +
                                    std::to_string(e.from) + ", " + std::to_string(e.to) + ")");
      const auto m = assignment[static_cast<std::size_t>(i)];
      const int s = m ? occupancy[static_cast<std::size_t>(*m)] : 0;
      result.costs.per_player[static_cast<std::size_t>(i)] += table->second.at(s);
      result.trace.assignment[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = m;
    }

    // Riders pull their vehicle along the shared edge; idle vehicles stay.
    for (int i = 0; i < n; ++i)
      if (const auto m = assignment[static_cast<std::size_t>(i)])
        vehicle_nodes[static_cast<std::size_t>(*m)] = chosen[static_cast<std::size_t>(i)].to;
    for (int i = 0; i < n; ++i) player_nodes[static_cast<std::size_t>(i)] = chosen[static_cast<std::size_t>(i)].to;

    for (int m = 0; m < vehicles; ++m) {
      result.trace.occupancy[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)] =
          occupancy[static_cast<std::size_t>(m)];
      result.trace.vehicle_positions[static_cast<std::size_t>(m)].push_back(
          vehicle_nodes[static_cast<std::size_t>(m)]);
    }
  }

  result.costs.system = system_cost(result.costs);
  return result;
}

} // namespace rsg
