#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsg/errors.hpp"
#include "rsg/report.hpp"

namespace {

using rsg::fmt;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, sep)) out.push_back(token);
  return out;
}

rsg::Profile parse_profile(const rsg::GameSpec& spec, const std::string& text) {
  const auto tokens = split(text, ',');
  const auto& game = spec.game;
  if (static_cast<int>(tokens.size()) != game.base.player_count)
    throw rsg::ValidationError("profile: expected " + std::to_string(game.base.player_count) +
                               " strategies, got " + std::to_string(tokens.size()));
  rsg::Profile profile;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& labels = game.strategy_labels[i];
    int index = -1;
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == tokens[i]) index = static_cast<int>(k);
    if (index < 0) {
      try {
        const int k = std::stoi(tokens[i]);
        if (k >= 0 && k < static_cast<int>(labels.size())) index = k;
      } catch (const std::exception&) {
      }
    }
    if (index < 0)
      throw rsg::ValidationError("profile: player " + std::to_string(i + 1) +
                                 " has no strategy \"" + tokens[i] + "\"");
    profile.push_back(index);
  }
  return profile;
}

int resolve_state(const rsg::GameSpec& spec, const std::string& label) {
  if (label.empty()) return 0;
  const int s = rsg::state_index(spec.game, label);
  if (s < 0) throw rsg::ValidationError("no state labeled \"" + label + "\"");
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw rsg::ValidationError("cannot write " + path);
  out << content;
}

void print_simulation(const rsg::GameSpec& spec, int state, const rsg::Profile& profile,
                      const rsg::DayResult& day) {
  const auto& game = spec.game;
  std::cout << "day trace (state " << game.states[static_cast<std::size_t>(state)].label
            << ", profile " << profile_label(game, profile) << ")\n";
  const int periods = game.base.horizon - 1;
  for (int t = 0; t < periods; ++t) {
    std::cout << "  period " << t + 1 << ":";
    for (int i = 0; i < game.base.player_count; ++i) {
      const rsg::Trip& trip =
          game.base.strategy_sets[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(profile[static_cast<std::size_t>(i)])];
      const rsg::Edge e = trip.edge_at(t);
      const auto m = day.trace.assignment[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
      std::cout << (i ? ";" : "") << " player " << i + 1 << " ";
      if (m)
        std::cout << "rides vehicle " << *m + 1;
      else
        std::cout << "walks";
      std::cout << " (" << e.from << ", " << e.to << ")";
    }
    std::cout << "\n";
  }
  for (std::size_t m = 0; m < day.trace.vehicle_positions.size(); ++m) {
    std::cout << "  vehicle " << m + 1 << " path: ";
    const auto& path = day.trace.vehicle_positions[m];
    for (std::size_t t = 0; t < path.size(); ++t) std::cout << (t ? "-" : "") << path[t];
    std::cout << "\n";
  }
  std::cout << "costs\n";
  for (std::size_t i = 0; i < day.costs.per_player.size(); ++i)
    std::cout << "  player " << i + 1 << ": " << fmt(day.costs.per_player[i]) << "\n";
  std::cout << "  system: " << fmt(day.costs.system) << "\n";
}

nlohmann::ordered_json simulation_json(const rsg::GameSpec& spec, int state,
                                       const rsg::Profile& profile, const rsg::DayResult& day) {
  nlohmann::ordered_json out;
  out["state"] = spec.game.states[static_cast<std::size_t>(state)].label;
  out["profile"] = profile;
  nlohmann::ordered_json assignment = nlohmann::ordered_json::array();
  for (const auto& per_player : day.trace.assignment) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& m : per_player)
      if (m)
        row.push_back(*m + 1);
      else
        row.push_back(nullptr);
    assignment.push_back(row);
  }
  out["assignment"] = assignment;
  out["vehicle_paths"] = day.trace.vehicle_positions;
  out["occupancy"] = day.trace.occupancy;
  out["costs"] = day.costs.per_player;
  out["system_cost"] = day.costs.system;
  return out;
}

int run(CLI::App& app, const std::string& command, const std::string& game_path,
        const std::string& state_label, const std::string& profile_text, bool no_ic,
        std::optional<double> tolerance, const std::string& export_path,
        std::optional<std::uint64_t> seed, std::optional<int> enum_start,
        std::optional<int> enum_end, const std::vector<int>& must_visit) {
  (void)app;
  rsg::GameSpec spec = rsg::load_game_file(game_path);
  if (tolerance) spec.options.tolerance = *tolerance;
  rsg::BceOptions options = rsg::bce_options(spec);
  options.include_ic = !no_ic;

  if (command == "analyze") {
    const auto result = rsg::analyze_game(spec, options, spec.options.tolerance);
    std::cout << rsg::render_text(spec, result);
    if (!export_path.empty()) write_file(export_path, rsg::export_analysis(spec, result));
    return 0;
  }

  if (command == "simulate") {
    if (profile_text.empty()) throw rsg::ValidationError("simulate requires --profile");
    const int s = resolve_state(spec, state_label);
    const auto profile = parse_profile(spec, profile_text);
    const auto day = rsg::simulate_day(spec.game.base, profile,
                                       spec.game.states[static_cast<std::size_t>(s)].instance);
    print_simulation(spec, s, profile, day);
    if (!export_path.empty())
      write_file(export_path, simulation_json(spec, s, profile, day).dump(2) + "\n");
    return 0;
  }

  if (command == "bne") {
    const auto tables = rsg::build_state_tables(spec.game);
    const auto expected = rsg::expected_table(spec.game, tables);
    const auto bne = rsg::pure_bayes_nash(spec.game, tables, spec.options.tolerance);
    std::cout << "expected costs\n";
    for (int r = 0; r < expected.profile_count(); ++r) {
      const auto profile = rsg::profile_unrank(r, expected.shape);
      std::cout << "  " << profile_label(spec.game, profile) << "  ";
      const auto& row = expected.cost[static_cast<std::size_t>(r)];
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "") << fmt(row[i]);
      std::cout << "\n";
    }
    std::cout << "pure equilibria\n";
    if (bne.empty()) std::cout << "  none\n";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& profile : bne) {
      const double cost = rsg::expected_system_cost(spec.game, tables, profile);
      std::cout << "  " << profile_label(spec.game, profile) << "  expected system cost "
                << fmt(cost) << "\n";
      rows.push_back({{"profile", profile}, {"system_cost", cost}});
    }
    if (!export_path.empty()) {
      nlohmann::ordered_json out;
      out["expected_table"] = expected.cost;
      out["pure_bne"] = rows;
      write_file(export_path, out.dump(2) + "\n");
    }
    return 0;
  }

  if (command == "bce") {
    const auto tables = rsg::build_state_tables(spec.game);
    const auto solution = rsg::solve_bce(spec.game, tables, options);
    const auto ic = rsg::verify_ic(spec.game, tables, solution.policy);
    std::cout << "mediator\n";
    std::cout << "  obedience constraints: " << (options.include_ic ? "included" : "dropped")
              << "\n";
    std::cout << "  optimal value: " << fmt(solution.value) << "\n";
    std::cout << "  policy sigma(profile | state):\n";
    for (std::size_t s = 0; s < solution.policy.sigma.size(); ++s) {
      std::cout << "    state " << spec.game.states[s].label << ": ";
      bool first = true;
      for (std::size_t r = 0; r < solution.policy.sigma[s].size(); ++r) {
        const double p = solution.policy.sigma[s][r];
        if (p < 1e-12) continue;
        if (!first) std::cout << ", ";
        std::cout << profile_label(spec.game,
                                   rsg::profile_unrank(static_cast<int>(r), solution.policy.shape))
                  << " " << fmt(p);
        first = false;
      }
      std::cout << "\n";
    }
    std::cout << "  obedience feasible: " << (ic.feasible ? "yes" : "no") << " (min slack "
              << fmt(ic.min_slack) << ")\n";
    nlohmann::ordered_json sample_rows = nlohmann::ordered_json::array();
    if (seed) {
      const auto sample_for = [&](int s) {
        const auto rec = rsg::sample_recommendation(solution.policy, s, *seed);
        std::cout << "sample (state " << spec.game.states[static_cast<std::size_t>(s)].label
                  << ", seed " << *seed << "): " << profile_label(spec.game, rec) << "\n";
        sample_rows.push_back({{"state", spec.game.states[static_cast<std::size_t>(s)].label},
                               {"profile", rec}});
      };
      if (!state_label.empty())
        sample_for(resolve_state(spec, state_label));
      else
        for (int s = 0; s < spec.game.state_count(); ++s) sample_for(s);
    }
    if (!export_path.empty()) {
      nlohmann::ordered_json out;
      out["value"] = solution.value;
      nlohmann::ordered_json policy;
      for (std::size_t s = 0; s < solution.policy.sigma.size(); ++s)
        policy[spec.game.states[s].label] = solution.policy.sigma[s];
      out["policy"] = policy;
      out["obedience_feasible"] = ic.feasible;
      out["min_slack"] = ic.min_slack;
      if (!sample_rows.empty()) out["samples"] = sample_rows;
      write_file(export_path, out.dump(2) + "\n");
    }
    return 0;
  }

  // enumerate
  const auto& net = spec.game.base.network;
  std::set<int> must(must_visit.begin(), must_visit.end());
  if (enum_start || enum_end || !must.empty()) {
    const int start = enum_start.value_or(spec.game.base.player_starts.front());
    const int end = enum_end.value_or(start);
    const auto trips = rsg::enumerate_trips(net, start, end, must, spec.game.base.horizon);
    std::cout << "trips " << start << " -> " << end << " (" << trips.size() << ")\n";
    for (const auto& trip : trips) std::cout << "  " << to_string(trip) << "\n";
    return 0;
  }
  for (int i = 0; i < spec.game.base.player_count; ++i) {
    const int start = spec.game.base.player_starts[static_cast<std::size_t>(i)];
    const auto trips = rsg::enumerate_trips(net, start, start, {}, spec.game.base.horizon);
    std::cout << "player " << i + 1 << " roundtrips from " << start << " (" << trips.size()
              << ")\n";
    for (const auto& trip : trips) std::cout << "  " << to_string(trip) << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ride-sharing games: equilibria, benchmarks and mediator policies"};
  app.require_subcommand(1);

  std::string game_path, state_label, profile_text, export_path;
  bool no_ic = false;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> enum_start, enum_end;
  std::vector<int> must_visit;

  auto* analyze = app.add_subcommand("analyze", "full report: tables, equilibria, mediator");
  auto* simulate = app.add_subcommand("simulate", "trace one day under a fixed profile");
  auto* bce = app.add_subcommand("bce", "solve the mediator's recommendation program");
  auto* bne = app.add_subcommand("bne", "expected costs and pure equilibria");
  auto* enumerate = app.add_subcommand("enumerate", "list trips satisfying constraints");

  for (auto* sub : {analyze, simulate, bce, bne, enumerate})
    sub->add_option("game", game_path, "game file (JSON)")->required();

  analyze->add_flag("--no-ic", no_ic, "drop the obedience constraints");
  bce->add_flag("--no-ic", no_ic, "drop the obedience constraints");
  for (auto* sub : {analyze, bce, bne})
    sub->add_option("--tolerance", tolerance, "numeric tolerance override");
  for (auto* sub : {analyze, simulate, bce, bne})
    sub->add_option("--export", export_path, "write machine-readable results here");
  simulate->add_option("--state", state_label, "state label (default: first state)");
  bce->add_option("--state", state_label, "state label for --seed sampling");
  simulate->add_option("--profile", profile_text, "comma-separated strategies, e.g. C,D");
  bce->add_option("--seed", seed, "draw a recommendation per state with this seed");
  enumerate->add_option("--start", enum_start, "start node (default: player 1's start)");
  enumerate->add_option("--end", enum_end, "end node (default: same as start)");
  enumerate->add_option("--must-visit", must_visit, "nodes every trip must contain")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(app, command, game_path, state_label, profile_text, no_ic, tolerance, export_path,
               seed, enum_start, enum_end, must_visit);
  } catch (const rsg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rsg::SolverError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const rsg::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
