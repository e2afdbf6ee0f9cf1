#pragma once

#include <vector>

#include "rsg/bayes.hpp"

namespace rsg {

// Equilibrium and benchmark summary for one Bayesian game.
struct EquilibriumReport {
  std::vector<Profile> pure_bne;                 // ascending profile rank
  std::vector<double> bne_system_costs;          // expected, one per equilibrium
  std::vector<Profile> full_info_choice;         // per-state argmin (lowest rank on ties)
  double full_info_value = 0.0;
  std::vector<Profile> ex_ante_minimizers;       // ascending profile rank
  double ex_ante_value = 0.0;
  double poa_bne = 0.0;                          // worst equilibrium / full info; 0 if no BNE

  bool has_equilibrium() const { return !pure_bne.empty(); }
  double worst_equilibrium_cost() const;
  double best_equilibrium_cost() const;
};

// All pure profiles where no player can strictly reduce their own expected
// cost by a unilateral strategy change. Exhaustive; empty set possible.
std::vector<Profile> pure_bayes_nash(const BayesianGame& game,
                                     const std::vector<CostMatrix>& tables,
                                     double tolerance = 1e-9);

// Expected system cost of a fixed profile (player i weighted by own prior).
double expected_system_cost(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                            const Profile& profile);

// State-contingent benchmark: the mediator observes the state and picks the
// per-state system-cost minimizer. Requires a common prior to weight states.
double full_info_optimum(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                         std::vector<Profile>* choice_per_state = nullptr);

// Best single profile fixed before the state is revealed; reports every
// minimizer within tolerance of the optimum.
double ex_ante_optimum(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                       std::vector<Profile>* minimizers = nullptr, double tolerance = 1e-9);

// equilibrium_value / optimum_value; optimum_value must be positive.
double price_of_anarchy(double equilibrium_value, double optimum_value);

EquilibriumReport analyze_equilibria(const BayesianGame& game,
                                     const std::vector<CostMatrix>& tables,
                                     double tolerance = 1e-9);

} // namespace rsg
