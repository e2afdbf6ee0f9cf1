#include "rsg/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsg {

namespace {

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.from) + ", " + std::to_string(e.to) + ")";
}

} // namespace

bool RoadNetwork::has_edge(int from, int to) const {
  return std::find(edges.begin(), edges.end(), Edge{from, to}) != edges.end();
}

std::vector<int> RoadNetwork::successors(int node) const {
  std::set<int> out;
  for (const Edge& e : edges)
    if (e.from == node) out.insert(e.to);
  return {out.begin(), out.end()};
}

RoadNetwork RoadNetwork::complete(int node_count) {
  RoadNetwork net;
  net.node_count = node_count;
  for (int u = 1; u <= node_count; ++u)
    for (int v = 1; v <= node_count; ++v) net.edges.push_back({u, v});
  return net;
}

double EdgeCostTable::at(int occupancy) const {
  if (occupancy < 0 || occupancy > capacity)
    throw std::invalid_argument("edge_cost: occupancy " + std::to_string(occupancy) +
                                " violates capacity " + std::to_string(capacity));
  return cost[static_cast<std::size_t>(occupancy)];
}

ValidationResult validate_network(const RoadNetwork& net) {
  ValidationResult result;
  if (net.node_count < 1) result.violations.push_back("node count must be positive");
  std::set<Edge> seen;
  for (const Edge& e : net.edges) {
    if (e.from < 1 || e.from > net.node_count || e.to < 1 || e.to > net.node_count)
      result.violations.push_back("edge " + edge_text(e) + ": dangling endpoint");
    if (!seen.insert(e).second)
      result.violations.push_back("duplicate edge " + edge_text(e));
  }
  for (int v = 1; v <= net.node_count; ++v)
    if (!seen.contains({v, v}))
      result.violations.push_back("missing loop at node " + std::to_string(v));
  return result;
}

ValidationResult validate_trip(const RoadNetwork& net, const Trip& trip, int horizon) {
  ValidationResult result;
  if (trip.length() != horizon) {
    result.violations.push_back("length " + std::to_string(trip.length()) + " != " +
                                std::to_string(horizon));
    return result;
  }
  for (int t = 0; t + 1 < trip.length(); ++t) {
    const Edge e = trip.edge_at(t);
    if (e.from < 1 || e.from > net.node_count || e.to < 1 || e.to > net.node_count) {
      result.violations.push_back("step " + std::to_string(t + 1) + ": node out of range in " +
                                  edge_text(e));
    } else if (!net.has_edge(e.from, e.to)) {
      result.violations.push_back("step " + std::to_string(t + 1) + ": no edge " + edge_text(e));
    }
  }
  return result;
}

ValidationResult validate_cost_table(const EdgeCostTable& table) {
  ValidationResult result;
  if (table.capacity < 1) {
    result.violations.push_back("capacity must be positive");
    return result;
  }
  if (table.cost.size() != static_cast<std::size_t>(table.capacity) + 1) {
    result.violations.push_back("expected " + std::to_string(table.capacity + 1) +
                                " cost entries (occupancy 0.." + std::to_string(table.capacity) +
                                "), got " + std::to_string(table.cost.size()));
    return result;
  }
  for (std::size_t s = 0; s < table.cost.size(); ++s) {
    if (!std::isfinite(table.cost[s]) || table.cost[s] < 0.0)
      result.violations.push_back("cost[" + std::to_string(s) + "] must be finite and nonnegative");
  }
  if (!result.ok()) return result;
  for (int s = 1; s < table.capacity; ++s) {
    if (table.cost[static_cast<std::size_t>(s) + 1] > table.cost[static_cast<std::size_t>(s)]) {
      result.violations.push_back("not decreasing on 1.." + std::to_string(table.capacity) +
                                  " (cost[" + std::to_string(s + 1) + "] > cost[" +
                                  std::to_string(s) + "])");
      break;
    }
  }
  if (table.cost[0] < table.cost[1])
    result.violations.push_back("walking cost cost[0] must be >= cost[1]");
  return result;
}

ValidationResult validate_game(const GameDefinition& game, bool require_cost_tables) {
  ValidationResult result;
  auto add = [&result](const std::string& v) { result.violations.push_back(v); };

  if (game.player_count < 1) add("player count must be >= 1");
  if (game.horizon < 2) add("horizon must be >= 2");
  if (game.vehicle_count < 0) add("vehicle count must be >= 0");
  if (game.capacity < 1) add("capacity must be >= 1");

  const ValidationResult net = validate_network(game.network);
  for (const auto& v : net.violations) add("network: " + v);

  if (static_cast<int>(game.player_starts.size()) != game.player_count)
    add("expected " + std::to_string(game.player_count) + " player starts, got " +
        std::to_string(game.player_starts.size()));
  if (static_cast<int>(game.vehicle_starts.size()) != game.vehicle_count)
    add("expected " + std::to_string(game.vehicle_count) + " vehicle starts, got " +
        std::to_string(game.vehicle_starts.size()));
  for (std::size_t i = 0; i < game.player_starts.size(); ++i)
    if (game.player_starts[i] < 1 || game.player_starts[i] > game.network.node_count)
      add("player " + std::to_string(i + 1) + ": start node out of range");
  for (std::size_t m = 0; m < game.vehicle_starts.size(); ++m)
    if (game.vehicle_starts[m] < 1 || game.vehicle_starts[m] > game.network.node_count)
      add("vehicle " + std::to_string(m + 1) + ": start node out of range");

  if (static_cast<int>(game.strategy_sets.size()) != game.player_count) {
    add("expected " + std::to_string(game.player_count) + " strategy sets, got " +
        std::to_string(game.strategy_sets.size()));
  } else {
    for (int i = 0; i < game.player_count; ++i) {
      const auto& set = game.strategy_sets[static_cast<std::size_t>(i)];
      if (set.empty()) add("player " + std::to_string(i + 1) + ": empty strategy set");
      for (std::size_t k = 0; k < set.size(); ++k) {
        const std::string where =
            "player " + std::to_string(i + 1) + " strategy " + std::to_string(k) + ": ";
        const ValidationResult tr = validate_trip(game.network, set[k], game.horizon);
        for (const auto& v : tr.violations) add(where + v);
        if (!set[k].nodes.empty() && i < static_cast<int>(game.player_starts.size()) &&
            set[k].nodes.front() != game.player_starts[static_cast<std::size_t>(i)])
          add(where + "does not start at the player's start node");
      }
    }
  }

  for (const Edge& e : game.network.edges) {
    auto it = game.cost_tables.find(e);
    if (it == game.cost_tables.end()) {
      if (require_cost_tables) add("edge " + edge_text(e) + ": no cost table");
      continue;
    }
    const ValidationResult ct = validate_cost_table(it->second);
    for (const auto& v : ct.violations) add("edge " + edge_text(e) + " cost table: " + v);
    if (it->second.capacity != game.capacity)
      add("edge " + edge_text(e) + " cost table: capacity " + std::to_string(it->second.capacity) +
          " != game capacity " + std::to_string(game.capacity));
  }
  return result;
}

namespace {

void enumerate_from(const RoadNetwork& net, std::vector<int>& path, int end, int horizon,
                    const std::set<int>& must_visit, std::vector<Trip>& out) {
  if (static_cast<int>(path.size()) == horizon) {
    if (path.back() != end) return;
    for (int v : must_visit)
      if (std::find(path.begin(), path.end(), v) == path.end()) return;
    out.push_back(Trip{path});
    return;
  }
  for (int succ : net.successors(path.back())) {
    path.push_back(succ);
    enumerate_from(net, path, end, horizon, must_visit, out);
    path.pop_back();
  }
}

} // namespace

std::vector<Trip> enumerate_trips(const RoadNetwork& net, int start, int end,
                                  const std::set<int>& must_visit, int horizon) {
  std::vector<Trip> out;
  if (horizon < 1 || start < 1 || start > net.node_count) return out;
  std::vector<int> path{start};
  enumerate_from(net, path, end, horizon, must_visit, out);
  return out; // DFS over ascending successors yields lexicographic order
}

std::string to_string(const Trip& trip) {
  std::string s;
  for (std::size_t i = 0; i < trip.nodes.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(trip.nodes[i]);
  }
  return s;
}

} // namespace rsg
