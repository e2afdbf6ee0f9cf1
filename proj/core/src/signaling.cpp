#include "rsg/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "rsg/equilibria.hpp"
#include "rsg/errors.hpp"

namespace rsg {

namespace {

std::vector<double> objective_prior_of(const BayesianGame& game, const BceOptions& options) {
  if (options.objective_prior) {
    const auto& p = *options.objective_prior;
    if (p.size() != game.states.size())
      throw std::invalid_argument("objective prior has " + std::to_string(p.size()) +
                                  " entries for " + std::to_string(game.states.size()) +
                                  " states");
    double sum = 0.0;
    for (double v : p) {
      if (v < 0.0) throw std::invalid_argument("objective prior has a negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("objective prior sums to " + std::to_string(sum));
    return p;
  }
  if (!game.common_prior())
    throw std::invalid_argument(
        "mediator objective undefined: players' priors differ and no objective prior was given");
  return game.priors.front();
}

std::vector<std::vector<double>> system_cost_rows(const std::vector<CostMatrix>& tables,
                                                  const BceOptions& options) {
  if (options.system_cost) {
    const auto& rows = *options.system_cost;
    if (rows.size() != tables.size())
      throw std::invalid_argument("system cost override does not cover every state");
    for (std::size_t s = 0; s < rows.size(); ++s)
      if (rows[s].size() != tables[s].cost.size())
        throw std::invalid_argument("system cost override does not cover every profile");
    return rows;
  }
  std::vector<std::vector<double>> rows(tables.size());
  for (std::size_t s = 0; s < tables.size(); ++s) {
    rows[s].reserve(tables[s].cost.size());
    for (const auto& per_player : tables[s].cost)
      rows[s].push_back(std::accumulate(per_player.begin(), per_player.end(), 0.0));
  }
  return rows;
}

void check_policy(const BayesianGame& game, const SignalingPolicy& policy) {
  const auto shape = strategy_shape(game.base);
  if (policy.shape != shape)
    throw std::invalid_argument("policy shape does not match the game's strategy sets");
  if (policy.sigma.size() != game.states.size())
    throw std::invalid_argument("policy covers " + std::to_string(policy.sigma.size()) +
                                " states, game has " + std::to_string(game.states.size()));
  const std::size_t profiles = static_cast<std::size_t>(profile_count(shape));
  for (std::size_t s = 0; s < policy.sigma.size(); ++s) {
    if (policy.sigma[s].size() != profiles)
      throw std::invalid_argument("policy row for state " + game.states[s].label +
                                  " does not cover every profile");
    double sum = 0.0;
    for (double v : policy.sigma[s]) {
      if (v < -1e-12 || v > 1.0 + 1e-12)
        throw std::invalid_argument("policy probability out of [0, 1] in state " +
                                    game.states[s].label);
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("policy row for state " + game.states[s].label + " sums to " +
                                  std::to_string(sum));
  }
}

} // namespace

double SignalingPolicy::probability(int state, const Profile& profile) const {
  if (state < 0 || state >= static_cast<int>(sigma.size()))
    throw std::invalid_argument("policy has no state " + std::to_string(state));
  return sigma[static_cast<std::size_t>(state)][static_cast<std::size_t>(
      profile_rank(profile, shape))];
}

LinearProgram build_bce_lp(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                           const BceOptions& options) {
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  const int states = game.state_count();
  const int vars = states * profiles;
  const auto prior = objective_prior_of(game, options);
  const auto system = system_cost_rows(tables, options);

  LinearProgram lp;
  lp.objective.assign(static_cast<std::size_t>(vars), 0.0);
  for (int s = 0; s < states; ++s)
    for (int r = 0; r < profiles; ++r)
      lp.objective[static_cast<std::size_t>(s * profiles + r)] =
          prior[static_cast<std::size_t>(s)] *
          system[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)];

  for (int s = 0; s < states; ++s) {
    std::vector<double> row(static_cast<std::size_t>(vars), 0.0);
    for (int r = 0; r < profiles; ++r) row[static_cast<std::size_t>(s * profiles + r)] = 1.0;
    lp.eq_lhs.push_back(std::move(row));
    lp.eq_rhs.push_back(1.0);
  }

  if (!options.include_ic) return lp;

  for (int i = 0; i < game.base.player_count; ++i) {
    const int own = shape[static_cast<std::size_t>(i)];
    for (int rec = 0; rec < own; ++rec)
      for (int dev = 0; dev < own; ++dev) {
        if (dev == rec) continue;
        std::vector<double> row(static_cast<std::size_t>(vars), 0.0);
        for (int s = 0; s < states; ++s) {
          const double p = game.priors[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
          if (p == 0.0) continue;
          for (int r = 0; r < profiles; ++r) {
            Profile profile = profile_unrank(r, shape);
            if (profile[static_cast<std::size_t>(i)] != rec) continue;
            const double obey =
                tables[static_cast<std::size_t>(s)].cost[static_cast<std::size_t>(r)]
                      [static_cast<std::size_t>(i)];
            profile[static_cast<std::size_t>(i)] = dev;
            const double deviate = tables[static_cast<std::size_t>(s)].at(
                profile)[static_cast<std::size_t>(i)];
            row[static_cast<std::size_t>(s * profiles + r)] = p * (obey - deviate);
          }
        }
        lp.le_lhs.push_back(std::move(row));
        lp.le_rhs.push_back(0.0);
      }
  }
  return lp;
}

BceSolution solve_bce(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                      const BceOptions& options) {
  const auto lp = build_bce_lp(game, tables, options);
  const auto solution = solve_lp(lp, options.tolerance);
  if (solution.status != LPStatus::Optimal)
    throw SolverError(std::string("recommendation program reported ") +
                      to_string(solution.status) +
                      "; it is feasible and bounded by construction");

  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);
  BceSolution result;
  result.policy.shape = shape;
  result.policy.sigma.assign(game.states.size(),
                             std::vector<double>(static_cast<std::size_t>(profiles), 0.0));
  for (int s = 0; s < game.state_count(); ++s)
    for (int r = 0; r < profiles; ++r)
      result.policy.sigma[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] =
          std::max(0.0, solution.x[static_cast<std::size_t>(s * profiles + r)]);
  result.value = solution.objective_value;
  return result;
}

ICReport verify_ic(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                   const SignalingPolicy& policy, double tolerance) {
  check_policy(game, policy);
  const auto shape = strategy_shape(game.base);
  const int profiles = profile_count(shape);

  ICReport report;
  report.tolerance = tolerance;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.base.player_count; ++i) {
    const int own = shape[static_cast<std::size_t>(i)];
    for (int rec = 0; rec < own; ++rec)
      for (int dev = 0; dev < own; ++dev) {
        if (dev == rec) continue;
        double obey = 0.0, deviate = 0.0;
        for (std::size_t s = 0; s < tables.size(); ++s) {
          const double p = game.priors[static_cast<std::size_t>(i)][s];
          for (int r = 0; r < profiles; ++r) {
            Profile profile = profile_unrank(r, shape);
            if (profile[static_cast<std::size_t>(i)] != rec) continue;
            const double mass = p * policy.sigma[s][static_cast<std::size_t>(r)];
            obey += mass * tables[s].cost[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
            profile[static_cast<std::size_t>(i)] = dev;
            deviate += mass * tables[s].at(profile)[static_cast<std::size_t>(i)];
          }
        }
        ICEntry entry{i, rec, dev, deviate - obey};
        report.min_slack = std::min(report.min_slack, entry.slack);
        report.entries.push_back(entry);
      }
  }
  if (report.entries.empty()) report.min_slack = 0.0;
  report.feasible = report.min_slack >= -tolerance;
  return report;
}

double policy_value(const BayesianGame& game, const std::vector<CostMatrix>& tables,
                    const SignalingPolicy& policy, const BceOptions& options) {
  check_policy(game, policy);
  const auto prior = objective_prior_of(game, options);
  const auto system = system_cost_rows(tables, options);
  double value = 0.0;
  for (std::size_t s = 0; s < tables.size(); ++s)
    for (std::size_t r = 0; r < system[s].size(); ++r)
      value += prior[s] * policy.sigma[s][r] * system[s][r];
  return value;
}

double bce_poa(const BayesianGame& game, const std::vector<CostMatrix>& tables,
               const BceOptions& options) {
  const double value = solve_bce(game, tables, options).value;
  return price_of_anarchy(value, full_info_optimum(game, tables));
}

Profile sample_recommendation(const SignalingPolicy& policy, int state, std::uint64_t seed) {
  if (state < 0 || state >= static_cast<int>(policy.sigma.size()))
    throw std::invalid_argument("policy has no state " + std::to_string(state));
  const auto& row = policy.sigma[static_cast<std::size_t>(state)];
  std::mt19937_64 rng(seed);
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cdf = 0.0;
  for (std::size_t r = 0; r < row.size(); ++r) {
    cdf += row[r];
    if (u < cdf) return profile_unrank(static_cast<int>(r), policy.shape);
  }
  // Rounding residue: fall back to the last profile with positive mass.
  for (std::size_t r = row.size(); r-- > 0;)
    if (row[r] > 0.0) return profile_unrank(static_cast<int>(r), policy.shape);
  throw std::invalid_argument("policy row for state " + std::to_string(state) + " has no mass");
}

SignalingPolicy symmetrize(const SignalingPolicy& policy) {
  const std::size_t n = policy.shape.size();
  for (int k : policy.shape)
    if (k != policy.shape.front())
      throw std::invalid_argument("symmetrize requires equal strategy counts for all players");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SignalingPolicy out;
  out.shape = policy.shape;
  out.sigma.assign(policy.sigma.size(),
                   std::vector<double>(policy.sigma.empty() ? 0 : policy.sigma.front().size(),
                                       0.0));
  int orbit = 0;
  do {
    ++orbit;
    for (std::size_t s = 0; s < policy.sigma.size(); ++s)
      for (std::size_t r = 0; r < policy.sigma[s].size(); ++r) {
        const auto profile = profile_unrank(static_cast<int>(r), policy.shape);
        Profile permuted(n);
        for (std::size_t i = 0; i < n; ++i)
          permuted[i] = profile[static_cast<std::size_t>(perm[i])];
        out.sigma[s][static_cast<std::size_t>(profile_rank(permuted, policy.shape))] +=
            policy.sigma[s][r];
      }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& row : out.sigma)
    for (double& v : row) v /= orbit;
  return out;
}

SignalingPolicy point_mass_policy(const std::vector<int>& shape, int state_count,
                                  const Profile& profile) {
  SignalingPolicy policy;
  policy.shape = shape;
  policy.sigma.assign(static_cast<std::size_t>(state_count),
                      std::vector<double>(static_cast<std::size_t>(profile_count(shape)), 0.0));
  const int rank = profile_rank(profile, shape);
  for (auto& row : policy.sigma) row[static_cast<std::size_t>(rank)] = 1.0;
  return policy;
}

} // namespace rsg
