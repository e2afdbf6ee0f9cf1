#include "rsg/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace rsg {

std::string fmt(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

std::string fmt_fixed(double v, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  // nearbyint honors the default rounding mode, ties to even.
  const double rounded = std::nearbyint(v * scale) / scale;
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, rounded);
  return buffer;
}

AnalysisResult analyze_game(const GameSpec& spec, const BceOptions& options, double tolerance) {
  AnalysisResult result;
  result.state_tables = build_state_tables(spec.game);
  result.expected = expected_table(spec.game, result.state_tables);
  result.equilibria = analyze_equilibria(spec.game, result.state_tables, tolerance);
  result.bce = solve_bce(spec.game, result.state_tables, options);
  result.bce_ic = verify_ic(spec.game, result.state_tables, result.bce.policy);
  result.poa_bce = price_of_anarchy(result.bce.value, result.equilibria.full_info_value);
  result.ic_included = options.include_ic;
  if (spec.reference_policy) {
    ReferencePolicyCheck check;
    check.ic = verify_ic(spec.game, result.state_tables, *spec.reference_policy);
    check.value = policy_value(spec.game, result.state_tables, *spec.reference_policy, options);
    check.poa = price_of_anarchy(check.value, result.equilibria.full_info_value);
    result.reference = std::move(check);
  }
  return result;
}

namespace {

std::string strategy_name(const BayesianGame& game, int player, int strategy) {
  const std::size_t i = static_cast<std::size_t>(player);
  const std::size_t k = static_cast<std::size_t>(strategy);
  if (i < game.strategy_labels.size() && k < game.strategy_labels[i].size())
    return game.strategy_labels[i][k];
  return to_string(game.base.strategy_sets[i][k]);
}

void render_matrix(std::ostringstream& out, const BayesianGame& game, const CostMatrix& table) {
  for (int r = 0; r < table.profile_count(); ++r) {
    const auto profile = profile_unrank(r, table.shape);
    out << "  " << profile_label(game, profile) << "  ";
    const auto& row = table.cost[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << fmt(row[i]);
    out << "\n";
  }
}

void render_policy(std::ostringstream& out, const BayesianGame& game,
                   const SignalingPolicy& policy) {
  for (std::size_t s = 0; s < policy.sigma.size(); ++s) {
    out << "    state " << game.states[s].label << ": ";
    bool first = true;
    for (std::size_t r = 0; r < policy.sigma[s].size(); ++r) {
      const double p = policy.sigma[s][r];
      if (p < 1e-12) continue;
      if (!first) out << ", ";
      out << profile_label(game, profile_unrank(static_cast<int>(r), policy.shape)) << " "
          << fmt(p);
      first = false;
    }
    if (first) out << "(no mass)";
    out << "\n";
  }
}

void render_slacks(std::ostringstream& out, const BayesianGame& game, const ICReport& report) {
  for (const ICEntry& e : report.entries)
    out << "    player " << e.player + 1 << ", " << strategy_name(game, e.player, e.recommended)
        << " -> " << strategy_name(game, e.player, e.deviation) << ": " << fmt(e.slack) << "\n";
}

} // namespace

std::string render_text(const GameSpec& spec, const AnalysisResult& result) {
  const BayesianGame& game = spec.game;
  std::ostringstream out;
  out << "game: " << (spec.name.empty() ? "(unnamed)" : spec.name) << "\n";
  out << "players: " << game.base.player_count << ", states: " << game.state_count()
      << ", profiles per state: " << profile_count(strategy_shape(game.base)) << "\n";

  for (std::size_t s = 0; s < result.state_tables.size(); ++s) {
    out << "\nstate " << game.states[s].label << " (costs per profile"
        << (game.states[s].direct ? ", direct" : ", simulated") << ")\n";
    render_matrix(out, game, result.state_tables[s]);
  }

  out << "\nexpected costs\n";
  render_matrix(out, game, result.expected);

  out << "\npure equilibria\n";
  if (result.equilibria.pure_bne.empty()) {
    out << "  none\n";
  } else {
    for (std::size_t k = 0; k < result.equilibria.pure_bne.size(); ++k)
      out << "  " << profile_label(game, result.equilibria.pure_bne[k])
          << "  expected system cost " << fmt(result.equilibria.bne_system_costs[k]) << "\n";
  }

  out << "\nbenchmarks\n";
  out << "  full information optimum: " << fmt(result.equilibria.full_info_value) << "  [";
  for (std::size_t s = 0; s < result.equilibria.full_info_choice.size(); ++s)
    out << (s ? ", " : "") << "state " << game.states[s].label << " -> "
        << profile_label(game, result.equilibria.full_info_choice[s]);
  out << "]\n";
  out << "  ex-ante optimum: " << fmt(result.equilibria.ex_ante_value) << "  [";
  for (std::size_t k = 0; k < result.equilibria.ex_ante_minimizers.size(); ++k)
    out << (k ? ", " : "") << profile_label(game, result.equilibria.ex_ante_minimizers[k]);
  out << "]\n";

  if (result.equilibria.has_equilibrium())
    out << "\nprice of anarchy (equilibrium): "
        << fmt_fixed(result.equilibria.poa_bne, 2) << " (= " << fmt(result.equilibria.poa_bne)
        << ")\n";
  else
    out << "\nprice of anarchy (equilibrium): undefined (no pure equilibrium)\n";

  out << "\nmediator\n";
  out << "  obedience constraints: " << (result.ic_included ? "included" : "dropped") << "\n";
  out << "  optimal value: " << fmt(result.bce.value) << "\n";
  out << "  price of anarchy (mediator): " << fmt_fixed(result.poa_bce, 2) << " (= "
      << fmt(result.poa_bce) << ")\n";
  out << "  policy sigma(profile | state):\n";
  render_policy(out, game, result.bce.policy);
  out << "  obedience slacks (player, recommended -> deviation):\n";
  render_slacks(out, game, result.bce_ic);

  if (result.reference) {
    out << "\nreference policy\n";
    out << "  obedience: " << (result.reference->ic.feasible ? "feasible" : "infeasible")
        << " (min slack " << fmt(result.reference->ic.min_slack) << ")\n";
    out << "  value: " << fmt(result.reference->value) << " (~ "
        << fmt_fixed(result.reference->value, 1) << ")\n";
    out << "  price of anarchy: " << fmt_fixed(result.reference->poa, 2) << " (= "
        << fmt(result.reference->poa) << ")\n";
  }
  return out.str();
}

std::string export_analysis(const GameSpec& spec, const AnalysisResult& result) {
  using json = nlohmann::ordered_json;
  const BayesianGame& game = spec.game;
  json out;
  if (!spec.name.empty()) out["name"] = spec.name;

  json labels = json::array();
  for (const auto& state : game.states) labels.push_back(state.label);
  out["states"] = labels;

  json tables;
  for (std::size_t s = 0; s < result.state_tables.size(); ++s)
    tables[game.states[s].label] = result.state_tables[s].cost;
  out["state_tables"] = tables;
  out["expected_table"] = result.expected.cost;

  json bne;
  bne["profiles"] = json::array();
  bne["labels"] = json::array();
  for (const auto& profile : result.equilibria.pure_bne) {
    bne["profiles"].push_back(profile);
    bne["labels"].push_back(profile_label(game, profile));
  }
  bne["system_costs"] = result.equilibria.bne_system_costs;
  out["pure_bne"] = bne;

  json full_info;
  full_info["value"] = result.equilibria.full_info_value;
  json choice;
  for (std::size_t s = 0; s < result.equilibria.full_info_choice.size(); ++s)
    choice[game.states[s].label] = result.equilibria.full_info_choice[s];
  full_info["choice"] = choice;
  out["full_information"] = full_info;

  json ex_ante;
  ex_ante["value"] = result.equilibria.ex_ante_value;
  ex_ante["minimizers"] = result.equilibria.ex_ante_minimizers;
  out["ex_ante"] = ex_ante;

  if (result.equilibria.has_equilibrium())
    out["poa_equilibrium"] = result.equilibria.poa_bne;

  json mediator;
  mediator["obedience_included"] = result.ic_included;
  mediator["value"] = result.bce.value;
  mediator["poa"] = result.poa_bce;
  json policy;
  for (std::size_t s = 0; s < result.bce.policy.sigma.size(); ++s)
    policy[game.states[s].label] = result.bce.policy.sigma[s];
  mediator["policy"] = policy;
  json slacks = json::array();
  for (const ICEntry& e : result.bce_ic.entries)
    slacks.push_back({{"player", e.player + 1},
                      {"recommended", strategy_name(game, e.player, e.recommended)},
                      {"deviation", strategy_name(game, e.player, e.deviation)},
                      {"slack", e.slack}});
  mediator["slacks"] = slacks;
  out["mediator"] = mediator;

  if (result.reference) {
    json reference;
    reference["feasible"] = result.reference->ic.feasible;
    reference["min_slack"] = result.reference->ic.min_slack;
    reference["value"] = result.reference->value;
    reference["poa"] = result.reference->poa;
    json slack_rows = json::array();
    for (const ICEntry& e : result.reference->ic.entries)
      slack_rows.push_back({{"player", e.player + 1},
                            {"recommended", strategy_name(game, e.player, e.recommended)},
                            {"deviation", strategy_name(game, e.player, e.deviation)},
                            {"slack", e.slack}});
    reference["slacks"] = slack_rows;
    out["reference_policy"] = reference;
  }
  return out.dump(2) + "\n";
}

} // namespace rsg
