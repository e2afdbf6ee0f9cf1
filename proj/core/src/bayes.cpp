#include "rsg/bayes.hpp"

#include <cmath>
#include <stdexcept>

namespace rsg {

int profile_count(const std::vector<int>& shape) {
  int count = 1;
  for (int k : shape) {
    if (k <= 0) throw std::invalid_argument("profile_count: empty strategy set");
    count *= k;
  }
  return count;
}

int profile_rank(const Profile& profile, const std::vector<int>& shape) {
  if (profile.size() != shape.size())
    throw std::invalid_argument("profile_rank: profile/shape size mismatch");
  int rank = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= shape[i])
      throw std::invalid_argument("profile_rank: index out of range for player " +
                                  std::to_string(i + 1));
    rank = rank * shape[i] + profile[i];
  }
  return rank;
}

Profile profile_unrank(int rank, const std::vector<int>& shape) {
  if (rank < 0 || rank >= profile_count(shape))
    throw std::invalid_argument("profile_unrank: rank out of range");
  Profile profile(shape.size());
  for (std::size_t i = shape.size(); i-- > 0;) {
    profile[i] = rank % shape[i];
    rank /= shape[i];
  }
  return profile;
}

std::vector<int> strategy_shape(const GameDefinition& game) {
  std::vector<int> shape;
  shape.reserve(game.strategy_sets.size());
  for (const auto& set : game.strategy_sets) shape.push_back(static_cast<int>(set.size()));
  return shape;
}

int CostMatrix::profile_count() const { return rsg::profile_count(shape); }

const std::vector<double>& CostMatrix::at(const Profile& profile) const {
  return cost[static_cast<std::size_t>(profile_rank(profile, shape))];
}

bool BayesianGame::common_prior() const {
  for (std::size_t i = 1; i < priors.size(); ++i)
    if (priors[i] != priors[0]) return false;
  return true;
}

ValidationResult validate_priors(const BayesianGame& game) {
  ValidationResult result;
  const std::size_t n = static_cast<std::size_t>(game.base.player_count);
  if (game.priors.size() != n) {
    result.violations.push_back("priors: " + std::to_string(game.priors.size()) +
                                " rows for " + std::to_string(n) + " players");
    return result;
  }
  const std::size_t k = game.states.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = game.priors[i];
    if (p.size() != k) {
      result.violations.push_back("priors: player " + std::to_string(i + 1) + " row has " +
                                  std::to_string(p.size()) + " entries for " +
                                  std::to_string(k) + " states");
      continue;
    }
    double sum = 0.0;
    bool negative = false;
    for (double v : p) {
      if (v < 0.0) negative = true;
      sum += v;
    }
    if (negative)
      result.violations.push_back("priors: player " + std::to_string(i + 1) +
                                  " has a negative entry");
    else if (std::abs(sum - 1.0) > 1e-9)
      result.violations.push_back("priors: player " + std::to_string(i + 1) +
                                  " row sums to " + std::to_string(sum));
  }
  return result;
}

ValidationResult validate_bayesian_game(const BayesianGame& game) {
  bool all_direct = !game.states.empty();
  for (const auto& st : game.states)
    if (!st.direct) all_direct = false;
  // Edge cost tables are only needed when some state's costs are simulated.
  ValidationResult result = validate_game(game.base, !all_direct);
  if (game.states.empty()) result.violations.push_back("states: none defined");
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  for (std::size_t s = 0; s < game.states.size(); ++s) {
    const auto& st = game.states[s];
    const std::string where = "state " + st.label + ": ";
    if (st.direct) {
      if (st.direct->shape != shape)
        result.violations.push_back(where + "cost matrix shape does not match strategy sets");
      else if (static_cast<int>(st.direct->cost.size()) != profiles)
        result.violations.push_back(where + "cost matrix has " +
                                    std::to_string(st.direct->cost.size()) + " rows for " +
                                    std::to_string(profiles) + " profiles");
      else {
        bool bad_width = false, negative = false;
        for (const auto& row : st.direct->cost) {
          if (row.size() != static_cast<std::size_t>(game.base.player_count)) bad_width = true;
          for (double v : row)
            if (!(v >= 0.0)) negative = true;
        }
        if (bad_width)
          result.violations.push_back(where + "cost matrix row width does not match players");
        if (negative)
          result.violations.push_back(where + "cost matrix has a negative entry");
      }
    } else {
      if (st.instance.vehicle_count != static_cast<int>(st.instance.vehicle_starts.size()))
        result.violations.push_back(where + std::to_string(st.instance.vehicle_starts.size()) +
                                    " starts for " + std::to_string(st.instance.vehicle_count) +
                                    " vehicles");
      for (int v : st.instance.vehicle_starts)
        if (v < 1 || v > game.base.network.node_count)
          result.violations.push_back(where + "vehicle start node " + std::to_string(v) +
                                      " not in the network");
    }
    for (std::size_t t = s + 1; t < game.states.size(); ++t)
      if (game.states[t].label == st.label)
        result.violations.push_back("duplicate state label " + st.label);
  }
  const auto prior_result = validate_priors(game);
  result.violations.insert(result.violations.end(), prior_result.violations.begin(),
                           prior_result.violations.end());
  if (!game.strategy_labels.empty()) {
    if (game.strategy_labels.size() != game.base.strategy_sets.size())
      result.violations.push_back("strategy labels: row count does not match player count");
    else
      for (std::size_t i = 0; i < game.strategy_labels.size(); ++i)
        if (game.strategy_labels[i].size() != game.base.strategy_sets[i].size())
          result.violations.push_back("strategy labels: player " + std::to_string(i + 1) +
                                      " has " + std::to_string(game.strategy_labels[i].size()) +
                                      " labels for " +
                                      std::to_string(game.base.strategy_sets[i].size()) +
                                      " strategies");
  }
  return result;
}

std::vector<CostMatrix> build_state_tables(const BayesianGame& game) {
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  std::vector<CostMatrix> tables;
  tables.reserve(game.states.size());
  for (const auto& state : game.states) {
    if (state.direct) {
      tables.push_back(*state.direct);
      continue;
    }
    CostMatrix table;
    table.shape = shape;
    table.cost.reserve(static_cast<std::size_t>(profiles));
    for (int r = 0; r < profiles; ++r) {
      const auto day = simulate_day(game.base, profile_unrank(r, shape), state.instance);
      table.cost.push_back(day.costs.per_player);
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

double expected_cost(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                     int player, const Profile& profile) {
  if (player < 0 || player >= game.base.player_count)
    throw std::invalid_argument("expected_cost: no player " + std::to_string(player));
  if (tables.size() != game.states.size())
    throw std::invalid_argument("expected_cost: table/state count mismatch");
  double total = 0.0;
  for (std::size_t s = 0; s < tables.size(); ++s)
    total += game.priors[static_cast<std::size_t>(player)][s] *
             tables[s].at(profile)[static_cast<std::size_t>(player)];
  return total;
}

CostMatrix expected_table(const BayesianGame& game, const std::vector<CostMatrix>& tables) {
  CostMatrix table;
  table.shape = strategy_shape(game.base);
  const int profiles = profile_count(table.shape);
  const std::size_t n = static_cast<std::size_t>(game.base.player_count);
  table.cost.assign(static_cast<std::size_t>(profiles), std::vector<double>(n, 0.0));
  for (int r = 0; r < profiles; ++r) {
    const auto profile = profile_unrank(r, table.shape);
    for (std::size_t i = 0; i < n; ++i)
      table.cost[static_cast<std::size_t>(r)][i] =
          expected_cost(game, tables, static_cast<int>(i), profile);
  }
  return table;
}

std::string profile_label(const BayesianGame& game, const Profile& profile) {
  std::string out = "(";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out += ", ";
    if (i < game.strategy_labels.size() &&
        profile[i] < static_cast<int>(game.strategy_labels[i].size()))
      out += game.strategy_labels[i][static_cast<std::size_t>(profile[i])];
    else
      out += to_string(game.base.strategy_sets[i][static_cast<std::size_t>(profile[i])]);
  }
  out += ")";
  return out;
}

} // namespace rsg
