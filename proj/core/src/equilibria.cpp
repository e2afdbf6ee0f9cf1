#include "rsg/equilibria.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rsg {

double EquilibriumReport::worst_equilibrium_cost() const {
  if (bne_system_costs.empty()) throw std::logic_error("no equilibrium recorded");
  return *std::max_element(bne_system_costs.begin(), bne_system_costs.end());
}

double EquilibriumReport::best_equilibrium_cost() const {
  if (bne_system_costs.empty()) throw std::logic_error("no equilibrium recorded");
  return *std::min_element(bne_system_costs.begin(), bne_system_costs.end());
}

std::vector<Profile> pure_bayes_nash(const BayesianGame& game,
                                     const std::vector<CostMatrix>& tables, double tolerance) {
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  std::vector<Profile> result;
  for (int r = 0; r < profiles; ++r) {
    const auto profile = profile_unrank(r, shape);
    bool stable = true;
    for (int i = 0; stable && i < game.base.player_count; ++i) {
      const double own = expected_cost(game, tables, i, profile);
      Profile deviation = profile;
      for (int k = 0; k < shape[static_cast<std::size_t>(i)]; ++k) {
        if (k == profile[static_cast<std::size_t>(i)]) continue;
        deviation[static_cast<std::size_t>(i)] = k;
        if (expected_cost(game, tables, i, deviation) < own - tolerance) {
          stable = false;
          break;
        }
      }
    }
    if (stable) result.push_back(profile);
  }
  return result;
}

double expected_system_cost(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                            const Profile& profile) {
  double total = 0.0;
  for (int i = 0; i < game.base.player_count; ++i)
    total += expected_cost(game, tables, i, profile);
  return total;
}

double full_info_optimum(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                         std::vector<Profile>* choice_per_state) {
  if (!game.common_prior())
    throw std::invalid_argument("full-information benchmark undefined without a common prior");
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  const auto& prior = game.priors.front();
  double value = 0.0;
  if (choice_per_state) choice_per_state->clear();
  for (std::size_t s = 0; s < tables.size(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    int best_rank = -1;
    for (int r = 0; r < profiles; ++r) {
      double system = 0.0;
      for (double c : tables[s].cost[static_cast<std::size_t>(r)]) system += c;
      if (system < best) {
        best = system;
        best_rank = r;
      }
    }
    value += prior[s] * best;
    if (choice_per_state) choice_per_state->push_back(profile_unrank(best_rank, shape));
  }
  return value;
}

double ex_ante_optimum(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                       std::vector<Profile>* minimizers, double tolerance) {
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  std::vector<double> values(static_cast<std::size_t>(profiles));
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < profiles; ++r) {
    values[static_cast<std::size_t>(r)] =
        expected_system_cost(game, tables, profile_unrank(r, shape));
    best = std::min(best, values[static_cast<std::size_t>(r)]);
  }
  if (minimizers) {
    minimizers->clear();
    for (int r = 0; r < profiles; ++r)
      if (values[static_cast<std::size_t>(r)] <= best + tolerance)
        minimizers->push_back(profile_unrank(r, shape));
  }
  return best;
}

double price_of_anarchy(double equilibrium_value, double optimum_value) {
  if (!(optimum_value > 0.0))
    throw std::invalid_argument("price of anarchy undefined: optimum value is not positive");
  return equilibrium_value / optimum_value;
}

EquilibriumReport analyze_equilibria(const BayesianGame& game,
                                     const std::vector<CostMatrix>& tables, double tolerance) {
  EquilibriumReport report;
  report.pure_bne = pure_bayes_nash(game, tables, tolerance);
  for (const auto& profile : report.pure_bne)
    report.bne_system_costs.push_back(expected_system_cost(game, tables, profile));
  report.full_info_value = full_info_optimum(game, tables, &report.full_info_choice);
  report.ex_ante_value = ex_ante_optimum(game, tables, &report.ex_ante_minimizers, tolerance);
  if (report.has_equilibrium())
    report.poa_bne = price_of_anarchy(report.worst_equilibrium_cost(), report.full_info_value);
  return report;
}

} // namespace rsg
