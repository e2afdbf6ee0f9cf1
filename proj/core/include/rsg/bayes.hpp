#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsg/engine.hpp"
#include "rsg/model.hpp"

namespace rsg {

// Cost matrix over pure profiles for one state. Profiles are ranked row-major
// with player 0 most significant; cost[rank] lists one entry per player.
struct CostMatrix {
  std::vector<int> shape;                 // strategy count per player
  std::vector<std::vector<double>> cost;  // [profile rank][player]

  int profile_count() const;
  const std::vector<double>& at(const Profile& profile) const;
};

// One realization of the exogenous state. Costs come from simulating the
// fleet in `instance`, or verbatim from `direct` when a matrix is supplied.
struct GameState {
  std::string label;
  StateInstance instance;
  std::optional<CostMatrix> direct;
};

// Base game plus exogenous uncertainty: states, per-player priors over them,
// and human-readable strategy labels.
struct BayesianGame {
  GameDefinition base;
  std::vector<GameState> states;
  std::vector<std::vector<double>> priors;                 // [player][state]
  std::vector<std::vector<std::string>> strategy_labels;   // [player][strategy]

  int state_count() const { return static_cast<int>(states.size()); }
  bool common_prior() const;
};

// Row-major profile rank, player 0 most significant.
int profile_rank(const Profile& profile, const std::vector<int>& shape);
Profile profile_unrank(int rank, const std::vector<int>& shape);
int profile_count(const std::vector<int>& shape);

// Strategy-count shape of a game.
std::vector<int> strategy_shape(const GameDefinition& game);

ValidationResult validate_priors(const BayesianGame& game);
ValidationResult validate_bayesian_game(const BayesianGame& game);

// Per-state cost tables: simulates every pure profile, or passes a state's
// direct matrix through untouched.
std::vector<CostMatrix> build_state_tables(const BayesianGame& game);

// Expected daily cost of one player under their own prior.
double expected_cost(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                     int player, const Profile& profile);

// Full expected-cost matrix; entry [rank][i] uses player i's prior.
CostMatrix expected_table(const BayesianGame& game, const std::vector<CostMatrix>& tables);

std::string profile_label(const BayesianGame& game, const Profile& profile);

} // namespace rsg
