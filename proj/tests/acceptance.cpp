// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each criterion re-derives its expectations locally so a defect in one
// library layer cannot silently vouch for itself.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rsg/engine.hpp"
#include "rsg/equilibria.hpp"
#include "rsg/gamefile.hpp"
#include "rsg/lp.hpp"
#include "rsg/report.hpp"
#include "rsg/signaling.hpp"
#include "support/random_games.hpp"

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  %d. %s", pass ? "PASS" : "FAIL", number, name.c_str());
  if (!detail.empty()) std::printf(" (%s)", detail.c_str());
  std::printf("\n");
  if (!pass) ++failures;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

rsg::GameSpec bundled() {
  return rsg::load_game_file(std::string(RSG_SCENARIO_DIR) + "/two_commuters.game");
}

void criterion_expected_table() {
  const auto spec = bundled();
  const auto tables = rsg::build_state_tables(spec.game);
  const auto expected = rsg::expected_table(spec.game, tables);
  const std::vector<std::vector<double>> canon{{15, 15}, {17.5, 12.5}, {12.5, 17.5}, {16, 16}};
  const bool pass = expected.cost == canon;
  report(1, "expected cost table matches the canonical values exactly", pass,
         pass ? "rows 15/15, 17.5/12.5, 12.5/17.5, 16/16" : "table differs");
}

void criterion_equilibrium() {
  const auto spec = bundled();
  const auto tables = rsg::build_state_tables(spec.game);
  const auto bne = rsg::pure_bayes_nash(spec.game, tables);
  bool pass = bne.size() == 1 && bne[0] == rsg::Profile{1, 1};
  double cost = 0.0;
  if (pass) {
    cost = rsg::expected_system_cost(spec.game, tables, bne[0]);
    pass = cost == 32.0;
  }
  report(2, "the unique pure equilibrium is (D, D) at expected cost 32", pass,
         pass ? "cost 32" : "equilibrium set or cost differs");
}

void criterion_benchmarks() {
  const auto spec = bundled();
  const auto tables = rsg::build_state_tables(spec.game);
  std::vector<rsg::Profile> choice;
  const double full_info = rsg::full_info_optimum(spec.game, tables, &choice);
  const double poa = rsg::price_of_anarchy(32.0, full_info);
  const bool pass = near(full_info, 26.0, 1e-9) && choice.size() == 2 &&
                    choice[0] == rsg::Profile{1, 1} && choice[1] == rsg::Profile{0, 0} &&
                    near(poa, 1.2308, 1e-4) && rsg::fmt_fixed(poa, 2) == "1.23";
  report(3, "full-information optimum 26 with equilibrium price of anarchy 1.23", pass,
         "optimum " + rsg::fmt(full_info) + ", ratio " + rsg::fmt_fixed(poa, 2));
}

void criterion_mediator() {
  const auto spec = bundled();
  const auto tables = rsg::build_state_tables(spec.game);
  const auto solution = rsg::solve_bce(spec.game, tables);
  const auto lp = rsg::build_bce_lp(spec.game, tables);
  const auto oracle = rsg::vertex_oracle(lp);

  bool pass = near(solution.value, 82.0 / 3.0, 1e-6) &&
              oracle.status == rsg::LPStatus::Optimal &&
              near(solution.value, oracle.objective_value, 1e-6) && solution.value <= 27.9;

  const auto ref = spec.reference_policy;
  double ref_value = 0.0, ref_poa = 0.0;
  if (pass && ref) {
    const auto ic = rsg::verify_ic(spec.game, tables, *ref);
    ref_value = rsg::policy_value(spec.game, tables, *ref);
    ref_poa = rsg::price_of_anarchy(ref_value, 26.0);
    pass = ic.feasible && near(ref_value, 27.88, 0.01) &&
           rsg::fmt_fixed(ref_value, 1) == "27.9" && near(ref_poa, 1.07, 0.005) &&
           rsg::fmt_fixed(ref_poa, 2) == "1.07";
  } else {
    pass = false;
  }
  report(4, "optimal signaling reaches 82/3 and the reference policy prints 27.9 at ratio 1.07",
         pass, "optimum " + rsg::fmt(solution.value) + ", reference " + rsg::fmt(ref_value));
}

void criterion_engine() {
  const auto spec = bundled();
  const auto& base = spec.game.base;

  bool pass = true;
  // Vehicle state: simulation must reproduce the state-1 matrix exactly.
  const auto& vehicle = spec.game.states[1];
  for (int r = 0; r < 4; ++r) {
    const auto profile = rsg::profile_unrank(r, {2, 2});
    const auto day = rsg::simulate_day(base, profile, vehicle.instance);
    for (int i = 0; i < 2; ++i)
      if (day.costs.per_player[static_cast<std::size_t>(i)] !=
          vehicle.direct->cost[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)])
        pass = false;
  }

  // No-vehicle state: D always walks to 16; C walks three full-price legs to
  // 24, intentionally above the pinned matrix entry of 20. The gate asserts
  // the walking decomposition, not the matrix.
  const auto& empty = spec.game.states[0];
  for (int r = 0; r < 4; ++r) {
    const auto profile = rsg::profile_unrank(r, {2, 2});
    const auto day = rsg::simulate_day(base, profile, empty.instance);
    for (int i = 0; i < 2; ++i) {
      const double want = profile[static_cast<std::size_t>(i)] == 1 ? 16.0 : 24.0;
      if (day.costs.per_player[static_cast<std::size_t>(i)] != want) pass = false;
    }
  }
  report(5, "the engine reproduces the vehicle-state matrix and the walking decomposition",
         pass, "state-0 strategy C simulates to 24 while the matrix pins 20, by design");
}

void criterion_random_games() {
  std::mt19937_64 rng(97531);
  int checked = 0, attempts = 0;
  bool pass = true;
  while (checked < 100 && attempts < 2000 && pass) {
    ++attempts;
    const auto game = testsupport::random_matrix_game(rng);
    const auto tables = rsg::build_state_tables(game);
    const auto bne = rsg::pure_bayes_nash(game, tables);
    if (bne.empty()) continue;
    ++checked;

    double best_bne = 1e300;
    for (const auto& profile : bne)
      best_bne = std::min(best_bne, rsg::expected_system_cost(game, tables, profile));
    const double full_info = rsg::full_info_optimum(game, tables);
    const auto solution = rsg::solve_bce(game, tables);
    const auto ic = rsg::verify_ic(game, tables, solution.policy, 1e-8);

    if (!(full_info <= solution.value + 1e-6)) pass = false;
    if (!(solution.value <= best_bne + 1e-6)) pass = false;
    if (!ic.feasible) pass = false;
  }
  pass = pass && checked >= 100;
  report(6, "on random games the mediator lands between full information and the best equilibrium",
         pass, std::to_string(checked) + " games with pure equilibria checked");
}

void criterion_lp() {
  std::mt19937_64 rng(86420);
  int agreed = 0;
  bool pass = true;
  for (int round = 0; round < 200 && pass; ++round) {
    const auto lp = testsupport::random_lp(rng);
    const auto fast = rsg::solve_lp(lp);
    const auto slow = rsg::vertex_oracle(lp);
    if (fast.status != slow.status) {
      pass = false;
      break;
    }
    if (fast.status == rsg::LPStatus::Optimal) {
      if (!near(fast.objective_value, slow.objective_value, 1e-6)) pass = false;
      for (std::size_t i = 0; i < lp.eq_lhs.size() && pass; ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < fast.x.size(); ++j) lhs += lp.eq_lhs[i][j] * fast.x[j];
        if (!near(lhs, lp.eq_rhs[i], 1e-9)) pass = false;
      }
      for (std::size_t i = 0; i < lp.le_lhs.size() && pass; ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < fast.x.size(); ++j) lhs += lp.le_lhs[i][j] * fast.x[j];
        if (lhs > lp.le_rhs[i] + 1e-9) pass = false;
      }
      for (double v : fast.x)
        if (v < -1e-9) pass = false;
    }
    ++agreed;
  }
  report(7, "the simplex solver agrees with exhaustive vertex enumeration", pass,
         std::to_string(agreed) + " random programs compared");
}

void criterion_simulation_invariants() {
  std::mt19937_64 rng(13579);
  bool pass = true;
  int rounds = 0;
  for (; rounds < 200 && pass; ++rounds) {
    const auto c = testsupport::random_simulation(rng);
    const auto result = rsg::simulate_day(c.game, c.profile, c.state);
    const auto& trace = result.trace;
    const int periods = c.game.horizon - 1;

    for (int m = 0; m < c.state.vehicle_count && pass; ++m) {
      const auto& pos = trace.vehicle_positions[static_cast<std::size_t>(m)];
      if (pos.front() != c.state.vehicle_starts[static_cast<std::size_t>(m)]) pass = false;
      for (int t = 0; t < periods && pass; ++t) {
        if (!c.game.network.has_edge(pos[static_cast<std::size_t>(t)],
                                     pos[static_cast<std::size_t>(t) + 1]))
          pass = false;
        const int occ = trace.occupancy[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)];
        if (occ < 0 || occ > c.game.capacity) pass = false;
      }
    }

    double system = 0.0;
    for (int i = 0; i < c.game.player_count && pass; ++i) {
      const auto& trip = c.game.strategy_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(
          c.profile[static_cast<std::size_t>(i)])];
      double day = 0.0;
      for (int t = 0; t < periods && pass; ++t) {
        const rsg::Edge e = trip.edge_at(t);
        const auto ride =
            trace.assignment[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
        int occ = 0;
        if (ride) {
          const auto& pos = trace.vehicle_positions[static_cast<std::size_t>(*ride)];
          if (pos[static_cast<std::size_t>(t)] != e.from ||
              pos[static_cast<std::size_t>(t) + 1] != e.to)
            pass = false;
          occ = trace.occupancy[static_cast<std::size_t>(*ride)][static_cast<std::size_t>(t)];
          if (occ < 1) pass = false;
        }
        day += c.game.cost_tables.at(e).at(occ);
      }
      if (std::abs(result.costs.per_player[static_cast<std::size_t>(i)] - day) > 1e-9)
        pass = false;
      system += day;
    }
    if (pass && std::abs(result.costs.system - system) > 1e-9) pass = false;
  }
  report(8, "random days keep occupancy, vehicle walks and cost accounting coherent", pass,
         std::to_string(rounds) + " days simulated");
}

} // namespace

int main() {
  criterion_expected_table();
  criterion_equilibrium();
  criterion_benchmarks();
  criterion_mediator();
  criterion_engine();
  criterion_random_games();
  criterion_lp();
  criterion_simulation_invariants();

  if (failures == 0) {
    std::printf("all 8 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
