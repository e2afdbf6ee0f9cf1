#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsg/bayes.hpp"
#include "rsg/lp.hpp"

namespace rsg {

// Mediator recommendation distribution: one row per state over profile ranks.
struct SignalingPolicy {
  std::vector<int> shape;
  std::vector<std::vector<double>> sigma;  // [state][profile rank]

  double probability(int state, const Profile& profile) const;
};

// One obedience constraint, evaluated: recommended strategy vs a deviation.
// Slack is deviation cost minus obedience cost; nonnegative means obeying is
// weakly cheaper.
struct ICEntry {
  int player;
  int recommended;
  int deviation;
  double slack;
};

struct ICReport {
  std::vector<ICEntry> entries;  // ordered (player, recommended, deviation)
  double tolerance = 1e-8;
  double min_slack = 0.0;
  bool feasible = true;
};

struct BceOptions {
  bool include_ic = true;
  // Mediator's state distribution. Defaults to the common prior; required
  // explicitly when players' priors differ.
  std::optional<std::vector<double>> objective_prior;
  // Mediator's per-state, per-profile-rank cost. Defaults to the sum of
  // player costs.
  std::optional<std::vector<std::vector<double>>> system_cost;
  double tolerance = 1e-9;
};

struct BceSolution {
  SignalingPolicy policy;
  double value = 0.0;
};

// Minimization program over sigma(profile|state): variable index is
// state * profile_count + rank; one normalization equality per state; one
// <=0 obedience row per (player, recommended, deviation), in that order.
LinearProgram build_bce_lp(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                           const BceOptions& options = {});

// Solves the program. A non-optimal status is an internal fault: any game
// with a pure equilibrium makes the program feasible by construction.
BceSolution solve_bce(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                      const BceOptions& options = {});

// Recomputes every obedience slack directly from the state tables; shares no
// machinery with the program builder or solver.
ICReport verify_ic(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                   const SignalingPolicy& policy, double tolerance = 1e-8);

// Expected mediator cost of a fixed policy.
double policy_value(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                    const SignalingPolicy& policy, const BceOptions& options = {});

// solve_bce value divided by the full-information optimum.
double bce_poa(const BayesianGame& game, const std::vector<CostMatrix>& tables,
               const BceOptions& options = {});

// Deterministic draw from sigma(.|state).
Profile sample_recommendation(const SignalingPolicy& policy, int state, std::uint64_t seed);

// Averages sigma over all player permutations (profiles relabeled
// accordingly). Meaningful for symmetric games, where it preserves
// feasibility and objective by linearity. Requires equal strategy counts.
SignalingPolicy symmetrize(const SignalingPolicy& policy);

// State-independent point mass on one profile.
SignalingPolicy point_mass_policy(const std::vector<int>& shape, int state_count,
                                  const Profile& profile);

} // namespace rsg
