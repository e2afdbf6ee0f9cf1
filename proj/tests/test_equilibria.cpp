#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "rsg/equilibria.hpp"
#include "rsg/report.hpp"
#include "support/brute_force.hpp"
#include "support/example_game.hpp"
#include "support/random_games.hpp"

using rsg::BayesianGame;
using rsg::CostMatrix;
using rsg::Profile;

namespace {

// Matrix game over the example's base so the search code sees a well-formed
// BayesianGame without touching the simulator.
BayesianGame matrix_game(std::vector<std::vector<std::vector<double>>> state_costs,
                         std::vector<double> prior) {
  BayesianGame game = testsupport::example_game(true);
  game.states.resize(state_costs.size());
  for (std::size_t s = 0; s < state_costs.size(); ++s) {
    game.states[s].label = std::to_string(s);
    game.states[s].direct = CostMatrix{{2, 2}, std::move(state_costs[s])};
  }
  game.priors = {prior, prior};
  return game;
}

} // namespace

TEST_CASE("the example game has the lone equilibrium (D, D)") {
  const auto game = testsupport::example_game(true);
  const auto tables = rsg::build_state_tables(game);
  const auto bne = rsg::pure_bayes_nash(game, tables);
  REQUIRE(bne.size() == 1);
  CHECK(bne[0] == Profile{1, 1});
  CHECK(rsg::expected_system_cost(game, tables, bne[0]) == 32);
}

TEST_CASE("benchmarks for the example game") {
  const auto game = testsupport::example_game(true);
  const auto tables = rsg::build_state_tables(game);

  std::vector<Profile> choice;
  CHECK(rsg::full_info_optimum(game, tables, &choice) == doctest::Approx(26).epsilon(1e-9));
  REQUIRE(choice.size() == 2);
  CHECK(choice[0] == Profile{1, 1});
  CHECK(choice[1] == Profile{0, 0});

  std::vector<Profile> minimizers;
  CHECK(rsg::ex_ante_optimum(game, tables, &minimizers) == doctest::Approx(30).epsilon(1e-9));
  CHECK(minimizers == std::vector<Profile>{{0, 0}, {0, 1}, {1, 0}});
}

TEST_CASE("price of anarchy for the example game") {
  const auto game = testsupport::example_game(true);
  const auto tables = rsg::build_state_tables(game);
  const auto report = rsg::analyze_equilibria(game, tables);

  CHECK(report.has_equilibrium());
  CHECK(report.worst_equilibrium_cost() == 32);
  CHECK(report.best_equilibrium_cost() == 32);
  CHECK(report.poa_bne == doctest::Approx(32.0 / 26.0).epsilon(1e-9));
  CHECK(report.poa_bne == doctest::Approx(1.2308).epsilon(1e-4));
  CHECK(rsg::fmt_fixed(report.poa_bne, 2) == "1.23");
}

TEST_CASE("price of anarchy guards its denominator") {
  CHECK(rsg::price_of_anarchy(32, 26) == doctest::Approx(32.0 / 26.0));
  CHECK_THROWS_WITH_AS((void)rsg::price_of_anarchy(1, 0),
                       "price of anarchy undefined: optimum value is not positive",
                       std::invalid_argument);
  CHECK_THROWS_AS((void)rsg::price_of_anarchy(1, -2), std::invalid_argument);
}

TEST_CASE("full information benchmark needs a common prior") {
  auto game = testsupport::example_game(true);
  game.priors = {{1.0, 0.0}, {0.0, 1.0}};
  const auto tables = rsg::build_state_tables(game);
  CHECK_THROWS_WITH_AS((void)rsg::full_info_optimum(game, tables),
                       "full-information benchmark undefined without a common prior",
                       std::invalid_argument);
}

TEST_CASE("an empty report refuses equilibrium cost queries") {
  rsg::EquilibriumReport report;
  CHECK_FALSE(report.has_equilibrium());
  CHECK_THROWS_WITH_AS((void)report.worst_equilibrium_cost(), "no equilibrium recorded",
                       std::logic_error);
  CHECK_THROWS_AS((void)report.best_equilibrium_cost(), std::logic_error);
}

TEST_CASE("dominant strategies survive, dominated ones do not") {
  // Strategy 1 strictly dominates for both players in both states.
  const auto game = matrix_game({{{5, 5}, {5, 1}, {1, 5}, {1, 1}},
                                 {{9, 9}, {9, 2}, {2, 9}, {2, 2}}},
                                {0.5, 0.5});
  const auto tables = rsg::build_state_tables(game);
  const auto bne = rsg::pure_bayes_nash(game, tables);
  REQUIRE(bne.size() == 1);
  CHECK(bne[0] == Profile{1, 1});
}

TEST_CASE("a cyclic game has no pure equilibrium") {
  // Matching-pennies costs: each profile leaves one player eager to switch.
  const auto game = matrix_game({{{0, 4}, {4, 0}, {4, 0}, {0, 4}}}, {1.0});
  const auto tables = rsg::build_state_tables(game);
  CHECK(rsg::pure_bayes_nash(game, tables).empty());
  const auto report = rsg::analyze_equilibria(game, tables);
  CHECK_FALSE(report.has_equilibrium());
  CHECK(report.poa_bne == 0.0);
}

TEST_CASE("coordination games keep both pure equilibria") {
  const auto game = matrix_game({{{1, 1}, {5, 5}, {5, 5}, {2, 2}}}, {1.0});
  const auto tables = rsg::build_state_tables(game);
  const auto bne = rsg::pure_bayes_nash(game, tables);
  REQUIRE(bne.size() == 2);
  CHECK(bne[0] == Profile{0, 0});
  CHECK(bne[1] == Profile{1, 1});
  const auto report = rsg::analyze_equilibria(game, tables);
  CHECK(report.worst_equilibrium_cost() == 4);
  CHECK(report.best_equilibrium_cost() == 2);
}

TEST_CASE("benchmarks sandwich every equilibrium") {
  const auto game = testsupport::example_game(true);
  const auto tables = rsg::build_state_tables(game);
  const auto report = rsg::analyze_equilibria(game, tables);
  CHECK(report.full_info_value <= report.ex_ante_value + 1e-9);
  CHECK(report.ex_ante_value <= report.best_equilibrium_cost() + 1e-9);
}

TEST_CASE("equilibrium search agrees with brute force on random games") {
  std::mt19937_64 rng(20250815);
  int with_equilibrium = 0;
  for (int round = 0; round < 150; ++round) {
    const auto game = testsupport::random_matrix_game(rng);
    const auto tables = rsg::build_state_tables(game);
    const auto found = rsg::pure_bayes_nash(game, tables);
    const auto expected = testsupport::brute_force_bne(game, tables, 1e-9);
    REQUIRE(found == expected);
    if (!found.empty()) ++with_equilibrium;

    // Cross-check the benchmark orderings. Random costs may reach zero, so
    // the full report (which divides by the optimum) only applies when the
    // optimum is positive.
    const double full_info = rsg::full_info_optimum(game, tables);
    const double ex_ante = rsg::ex_ante_optimum(game, tables);
    CHECK(full_info <= ex_ante + 1e-9);
    if (!found.empty()) {
      double best = rsg::expected_system_cost(game, tables, found.front());
      for (const auto& profile : found)
        best = std::min(best, rsg::expected_system_cost(game, tables, profile));
      CHECK(ex_ante <= best + 1e-9);
    }
    if (full_info > 0.0) {
      const auto report = rsg::analyze_equilibria(game, tables);
      CHECK(report.full_info_value == full_info);
      CHECK(report.ex_ante_value == ex_ante);
    }
  }
  CHECK(with_equilibrium > 50);
}
