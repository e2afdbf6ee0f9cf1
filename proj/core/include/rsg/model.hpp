#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace rsg {

// A joint choice of strategies, one index per player into that player's
// strategy set.
using Profile = std::vector<int>;

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct Edge {
  int from = 0;
  int to = 0;
  auto operator<=>(const Edge&) const = default;
};

// Directed simple graph; nodes are 1..node_count and every node is expected
// to carry its own self-loop (validated, not enforced at construction).
struct RoadNetwork {
  int node_count = 0;
  std::vector<Edge> edges;

  bool has_edge(int from, int to) const;
  // Distinct successor nodes of `node`, ascending (self-loop included).
  std::vector<int> successors(int node) const;

  // Every ordered pair plus all self-loops.
  static RoadNetwork complete(int node_count);
};

// A day-long walk on the network: exactly `horizon` nodes, consecutive
// nodes joined by an edge.
struct Trip {
  std::vector<int> nodes;

  int length() const { return static_cast<int>(nodes.size()); }
  Edge edge_at(int period) const { return {nodes[period], nodes[period + 1]}; }

  auto operator<=>(const Trip&) const = default;
};

// Riding cost per occupancy level for one edge. Index s counts the riders
// sharing the vehicle; s = 0 is the cost of walking the edge.
struct EdgeCostTable {
  int capacity = 0;            // w
  std::vector<double> cost;    // size capacity + 1, indexed by occupancy

  double at(int occupancy) const; // throws on occupancy outside [0, capacity]
};

struct GameDefinition {
  int player_count = 0;   // N
  int vehicle_count = 0;  // M
  int horizon = 0;        // T, nodes per trip
  int capacity = 0;       // w, shared by all vehicles
  RoadNetwork network;
  std::map<Edge, EdgeCostTable> cost_tables;
  std::vector<int> player_starts;
  std::vector<int> vehicle_starts;
  std::vector<std::vector<Trip>> strategy_sets;
};

ValidationResult validate_network(const RoadNetwork& net);
ValidationResult validate_trip(const RoadNetwork& net, const Trip& trip, int horizon);
ValidationResult validate_cost_table(const EdgeCostTable& table);
// Runs every structural check on the game: counts, starts, strategy sets,
// and a complete, consistent cost table per network edge. Cost tables may be
// exempted for games whose costs come from somewhere other than simulation.
ValidationResult validate_game(const GameDefinition& game, bool require_cost_tables = true);

// All trips of exactly `horizon` nodes from `start` to `end` that visit
// every node in `must_visit`, in lexicographic order.
std::vector<Trip> enumerate_trips(const RoadNetwork& net, int start, int end,
                                  const std::set<int>& must_visit, int horizon);

std::string to_string(const Trip& trip); // "1-2-3-1"

} // namespace rsg
