#include "rsg/gamefile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rsg/errors.hpp"

namespace rsg {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) known = true;
    if (!known) fail(path, "unknown field \"" + it.key() + "\"");
  }
}

const json& require_field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, std::string("expected an object, got ") + obj.type_name());
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer())
    fail(path, std::string("expected an integer, got ") + v.type_name());
  return v.get<int>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, std::string("expected a number, got ") + v.type_name());
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, std::string("expected a string, got ") + v.type_name());
  return v.get<std::string>();
}

const json& get_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, std::string("expected an array, got ") + v.type_name());
  return v;
}

std::vector<int> get_int_row(const json& v, const std::string& path) {
  std::vector<int> row;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i)
    row.push_back(get_int(v[i], path + "[" + std::to_string(i) + "]"));
  return row;
}

std::vector<double> get_number_row(const json& v, const std::string& path) {
  std::vector<double> row;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i)
    row.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
  return row;
}

Edge get_edge(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected a [from, to] pair");
  return {get_int(v[0], path + "[0]"), get_int(v[1], path + "[1]")};
}

RoadNetwork parse_network(const json& root) {
  const json& jnet = require_field(root, "top level", "network");
  reject_unknown(jnet, "network", {"nodes", "edges"});
  const int nodes = get_int(require_field(jnet, "network", "nodes"), "network.nodes");
  const json& jedges = require_field(jnet, "network", "edges");
  if (jedges.is_string()) {
    const auto s = jedges.get<std::string>();
    if (s != "complete")
      fail("network.edges", "unknown selector \"" + s + "\" (use \"complete\" or a pair list)");
    return RoadNetwork::complete(nodes);
  }
  RoadNetwork net;
  net.node_count = nodes;
  const json& arr = get_array(jedges, "network.edges");
  for (std::size_t i = 0; i < arr.size(); ++i)
    net.edges.push_back(get_edge(arr[i], "network.edges[" + std::to_string(i) + "]"));
  return net;
}

void parse_players(const json& root, const RoadNetwork& net, int horizon, GameDefinition& base,
                   std::vector<std::vector<std::string>>& labels) {
  const json& jplayers = get_array(require_field(root, "top level", "players"), "players");
  if (jplayers.empty()) fail("players", "expected at least one player");
  base.player_count = static_cast<int>(jplayers.size());
  for (std::size_t i = 0; i < jplayers.size(); ++i) {
    const std::string path = "players[" + std::to_string(i) + "]";
    const json& p = jplayers[i];
    reject_unknown(p, path, {"start", "strategies", "enumerate"});
    const int start = get_int(require_field(p, path, "start"), path + ".start");
    base.player_starts.push_back(start);

    std::vector<Trip> set;
    std::vector<std::string> set_labels;
    const bool listed = p.contains("strategies");
    if (listed == p.contains("enumerate"))
      fail(path, "give exactly one of \"strategies\" or \"enumerate\"");
    if (listed) {
      const json& arr = get_array(p["strategies"], path + ".strategies");
      if (arr.empty()) fail(path + ".strategies", "expected at least one strategy");
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string spath = path + ".strategies[" + std::to_string(k) + "]";
        const json& s = arr[k];
        reject_unknown(s, spath, {"label", "trip"});
        Trip trip{get_int_row(require_field(s, spath, "trip"), spath + ".trip")};
        set_labels.push_back(s.contains("label") ? get_string(s["label"], spath + ".label")
                                                 : to_string(trip));
        set.push_back(std::move(trip));
      }
    } else {
      const std::string epath = path + ".enumerate";
      const json& e = p["enumerate"];
      reject_unknown(e, epath, {"end", "must_visit"});
      const int end = get_int(require_field(e, epath, "end"), epath + ".end");
      std::set<int> must;
      if (e.contains("must_visit"))
        for (int v : get_int_row(e["must_visit"], epath + ".must_visit")) must.insert(v);
      set = enumerate_trips(net, start, end, must, horizon);
      if (set.empty()) fail(epath, "no trips satisfy the constraints");
      for (const Trip& t : set) set_labels.push_back(to_string(t));
    }
    base.strategy_sets.push_back(std::move(set));
    labels.push_back(std::move(set_labels));
  }
}

void parse_states(const json& root, const GameDefinition& base, BayesianGame& game) {
  const json& jstates = get_array(require_field(root, "top level", "states"), "states");
  if (jstates.empty()) fail("states", "expected at least one state");
  const auto shape = strategy_shape(base);
  const int profiles = profile_count(shape);
  for (std::size_t s = 0; s < jstates.size(); ++s) {
    const std::string path = "states[" + std::to_string(s) + "]";
    const json& st = jstates[s];
    reject_unknown(st, path, {"label", "vehicles", "matrix"});
    GameState state;
    state.label = get_string(require_field(st, path, "label"), path + ".label");

    const std::string vpath = path + ".vehicles";
    const json& v = require_field(st, path, "vehicles");
    reject_unknown(v, vpath, {"count", "starts"});
    state.instance.vehicle_count = get_int(require_field(v, vpath, "count"), vpath + ".count");
    state.instance.vehicle_starts = get_int_row(require_field(v, vpath, "starts"),
                                                vpath + ".starts");

    if (st.contains("matrix")) {
      const std::string mpath = path + ".matrix";
      const json& m = get_array(st["matrix"], mpath);
      if (static_cast<int>(m.size()) != profiles)
        fail(mpath, "expected " + std::to_string(profiles) + " rows (one per profile), got " +
                        std::to_string(m.size()));
      CostMatrix direct;
      direct.shape = shape;
      for (std::size_t r = 0; r < m.size(); ++r) {
        auto row = get_number_row(m[r], mpath + "[" + std::to_string(r) + "]");
        if (row.size() != static_cast<std::size_t>(base.player_count))
          fail(mpath + "[" + std::to_string(r) + "]",
               "expected " + std::to_string(base.player_count) + " costs, got " +
                   std::to_string(row.size()));
        direct.cost.push_back(std::move(row));
      }
      state.direct = std::move(direct);
    }
    game.states.push_back(std::move(state));
  }
}

void parse_priors(const json& root, BayesianGame& game) {
  const json& jp = get_array(require_field(root, "top level", "priors"), "priors");
  if (jp.empty()) fail("priors", "expected at least one entry");
  const std::size_t n = static_cast<std::size_t>(game.base.player_count);
  if (jp[0].is_number()) {
    const auto row = get_number_row(jp, "priors");
    game.priors.assign(n, row);
    return;
  }
  if (jp.size() != n)
    fail("priors", "expected " + std::to_string(n) + " rows (one per player) or one shared row, "
                   "got " + std::to_string(jp.size()));
  for (std::size_t i = 0; i < jp.size(); ++i)
    game.priors.push_back(get_number_row(jp[i], "priors[" + std::to_string(i) + "]"));
}

void parse_edge_costs(const json& root, GameDefinition& base) {
  if (!root.contains("edge_costs")) return;
  const json& blocks = get_array(root["edge_costs"], "edge_costs");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string path = "edge_costs[" + std::to_string(b) + "]";
    const json& block = blocks[b];
    reject_unknown(block, path, {"edges", "cost"});
    const auto cost = get_number_row(require_field(block, path, "cost"), path + ".cost");
    if (cost.size() != static_cast<std::size_t>(base.capacity) + 1)
      fail(path + ".cost", "expected " + std::to_string(base.capacity + 1) +
                               " entries (occupancy 0.." + std::to_string(base.capacity) +
                               "), got " + std::to_string(cost.size()));

    std::vector<Edge> selected;
    const json& sel = require_field(block, path, "edges");
    if (sel.is_string()) {
      const auto s = sel.get<std::string>();
      if (s != "all" && s != "loops" && s != "non_loops")
        fail(path + ".edges", "unknown selector \"" + s +
                                  "\" (use \"all\", \"loops\", \"non_loops\" or a pair list)");
      for (const Edge& e : base.network.edges)
        if (s == "all" || (s == "loops" && e.from == e.to) ||
            (s == "non_loops" && e.from != e.to))
          selected.push_back(e);
    } else {
      const json& arr = get_array(sel, path + ".edges");
      for (std::size_t j = 0; j < arr.size(); ++j) {
        const std::string epath = path + ".edges[" + std::to_string(j) + "]";
        const Edge e = get_edge(arr[j], epath);
        if (!base.network.has_edge(e.from, e.to))
          fail(epath, "edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                          ") not in the network");
        selected.push_back(e);
      }
    }
    // Later blocks override earlier ones on overlapping edges.
    for (const Edge& e : selected)
      base.cost_tables[e] = EdgeCostTable{base.capacity, cost};
  }
}

void parse_reference_policy(const json& root, GameSpec& spec) {
  if (!root.contains("reference_policy")) return;
  const json& jp = root["reference_policy"];
  if (!jp.is_object())
    fail("reference_policy", std::string("expected an object, got ") + jp.type_name());
  for (auto it = jp.begin(); it != jp.end(); ++it)
    if (state_index(spec.game, it.key()) < 0)
      fail("reference_policy", "unknown state label \"" + it.key() + "\"");

  SignalingPolicy policy;
  policy.shape = strategy_shape(spec.game.base);
  const std::size_t profiles = static_cast<std::size_t>(profile_count(policy.shape));
  for (const auto& state : spec.game.states) {
    const std::string path = "reference_policy." + state.label;
    if (!jp.contains(state.label)) fail("reference_policy", "missing state \"" + state.label + "\"");
    auto row = get_number_row(jp[state.label], path);
    if (row.size() != profiles)
      fail(path, "expected " + std::to_string(profiles) + " probabilities, got " +
                     std::to_string(row.size()));
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0 || p > 1.0) fail(path, "probability outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail(path, "probabilities sum to " + std::to_string(sum));
    policy.sigma.push_back(std::move(row));
  }
  spec.reference_policy = std::move(policy);
}

void parse_options(const json& root, GameSpec& spec) {
  if (!root.contains("options")) return;
  const json& jo = root["options"];
  reject_unknown(jo, "options", {"tolerance", "objective_prior", "objective"});
  if (jo.contains("tolerance")) {
    spec.options.tolerance = get_number(jo["tolerance"], "options.tolerance");
    if (spec.options.tolerance <= 0.0) fail("options.tolerance", "must be positive");
  }
  if (jo.contains("objective_prior")) {
    auto row = get_number_row(jo["objective_prior"], "options.objective_prior");
    if (row.size() != spec.game.states.size())
      fail("options.objective_prior", "expected " + std::to_string(spec.game.states.size()) +
                                          " entries (one per state), got " +
                                          std::to_string(row.size()));
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0) fail("options.objective_prior", "negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      fail("options.objective_prior", "entries sum to " + std::to_string(sum));
    spec.options.objective_prior = std::move(row);
  }
  if (jo.contains("objective")) {
    const json& obj = jo["objective"];
    if (!obj.is_object())
      fail("options.objective", std::string("expected an object, got ") + obj.type_name());
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (state_index(spec.game, it.key()) < 0)
        fail("options.objective", "unknown state label \"" + it.key() + "\"");
    const std::size_t profiles =
        static_cast<std::size_t>(profile_count(strategy_shape(spec.game.base)));
    std::map<std::string, std::vector<double>> rows;
    for (const auto& state : spec.game.states) {
      const std::string path = "options.objective." + state.label;
      if (!obj.contains(state.label))
        fail("options.objective", "missing state \"" + state.label + "\"");
      auto row = get_number_row(obj[state.label], path);
      if (row.size() != profiles)
        fail(path, "expected " + std::to_string(profiles) + " costs (one per profile), got " +
                       std::to_string(row.size()));
      rows[state.label] = std::move(row);
    }
    spec.options.objective = std::move(rows);
  }
}

} // namespace

GameSpec parse_game_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object())
    fail("top level", std::string("expected an object, got ") + root.type_name());
  reject_unknown(root, "top level",
                 {"name", "network", "horizon", "capacity", "players", "states", "priors",
                  "edge_costs", "reference_policy", "options"});

  GameSpec spec;
  if (root.contains("name")) spec.name = get_string(root["name"], "name");

  GameDefinition& base = spec.game.base;
  base.network = parse_network(root);
  base.horizon = get_int(require_field(root, "top level", "horizon"), "horizon");
  base.capacity = get_int(require_field(root, "top level", "capacity"), "capacity");
  parse_players(root, base.network, base.horizon, base, spec.game.strategy_labels);
  parse_states(root, base, spec.game);
  // The first state doubles as the game's default world.
  base.vehicle_count = spec.game.states.front().instance.vehicle_count;
  base.vehicle_starts = spec.game.states.front().instance.vehicle_starts;
  parse_priors(root, spec.game);
  parse_edge_costs(root, base);
  parse_reference_policy(root, spec);
  parse_options(root, spec);

  const ValidationResult check = validate_bayesian_game(spec.game);
  if (!check.ok()) {
    std::string all;
    for (const auto& v : check.violations) {
      if (!all.empty()) all += '\n';
      all += v;
    }
    throw ValidationError(all);
  }
  return spec;
}

GameSpec load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_text(buffer.str());
}

int state_index(const BayesianGame& game, const std::string& label) {
  for (std::size_t s = 0; s < game.states.size(); ++s)
    if (game.states[s].label == label) return static_cast<int>(s);
  return -1;
}

BceOptions bce_options(const GameSpec& spec) {
  BceOptions options;
  options.tolerance = spec.options.tolerance;
  options.objective_prior = spec.options.objective_prior;
  if (spec.options.objective) {
    std::vector<std::vector<double>> rows;
    for (const auto& state : spec.game.states) rows.push_back(spec.options.objective->at(state.label));
    options.system_cost = std::move(rows);
  }
  return options;
}

std::string export_game(const GameSpec& spec) {
  const BayesianGame& game = spec.game;
  const GameDefinition& base = game.base;
  json out;
  if (!spec.name.empty()) out["name"] = spec.name;

  json edges = json::array();
  {
    auto sorted = base.network.edges;
    std::sort(sorted.begin(), sorted.end());
    for (const Edge& e : sorted) edges.push_back({e.from, e.to});
  }
  out["network"] = {{"nodes", base.network.node_count}, {"edges", edges}};
  out["horizon"] = base.horizon;
  out["capacity"] = base.capacity;

  json players = json::array();
  for (std::size_t i = 0; i < base.strategy_sets.size(); ++i) {
    json strategies = json::array();
    for (std::size_t k = 0; k < base.strategy_sets[i].size(); ++k) {
      const Trip& trip = base.strategy_sets[i][k];
      json s;
      s["label"] = game.strategy_labels[i][k];
      s["trip"] = trip.nodes;
      strategies.push_back(std::move(s));
    }
    players.push_back({{"start", base.player_starts[i]}, {"strategies", strategies}});
  }
  out["players"] = players;

  json states = json::array();
  for (const auto& state : game.states) {
    json st;
    st["label"] = state.label;
    st["vehicles"] = {{"count", state.instance.vehicle_count},
                      {"starts", state.instance.vehicle_starts}};
    if (state.direct) st["matrix"] = state.direct->cost;
    states.push_back(std::move(st));
  }
  out["states"] = states;
  out["priors"] = game.priors;

  if (!base.cost_tables.empty()) {
    json blocks = json::array();
    for (const auto& [edge, table] : base.cost_tables)
      blocks.push_back({{"edges", json::array({json::array({edge.from, edge.to})})},
                        {"cost", table.cost}});
    out["edge_costs"] = blocks;
  }

  if (spec.reference_policy) {
    json policy;
    for (std::size_t s = 0; s < game.states.size(); ++s)
      policy[game.states[s].label] = spec.reference_policy->sigma[s];
    out["reference_policy"] = policy;
  }

  json options;
  if (spec.options.tolerance != 1e-9) options["tolerance"] = spec.options.tolerance;
  if (spec.options.objective_prior) options["objective_prior"] = *spec.options.objective_prior;
  if (spec.options.objective) {
    json objective;
    for (const auto& [label, row] : *spec.options.objective) objective[label] = row;
    options["objective"] = objective;
  }
  if (!options.empty()) out["options"] = options;

  return out.dump(2) + "\n";
}

} // namespace rsg
