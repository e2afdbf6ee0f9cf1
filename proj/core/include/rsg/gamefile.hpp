#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsg/bayes.hpp"
#include "rsg/signaling.hpp"

namespace rsg {

// Per-file analysis knobs. objective maps a state label to one mediator cost
// per profile rank, overriding the sum of player costs.
struct GameOptions {
  double tolerance = 1e-9;
  std::optional<std::vector<double>> objective_prior;
  std::optional<std::map<std::string, std::vector<double>>> objective;
};

// A parsed game file: the game itself plus optional extras carried by the
// file (a reference policy to verify, analysis options).
struct GameSpec {
  std::string name;
  BayesianGame game;
  std::optional<SignalingPolicy> reference_policy;  // rows follow state order
  GameOptions options;
};

// Strict JSON (// comments allowed): unknown fields, wrong types, and
// invariant violations are rejected with the offending field path.
// ParseError = not valid JSON; ValidationError = schema or game violations.
GameSpec parse_game_text(const std::string& text);
GameSpec load_game_file(const std::string& path);

// Canonical JSON that re-parses to an equivalent GameSpec.
std::string export_game(const GameSpec& spec);

// Index of the state with this label, -1 when absent.
int state_index(const BayesianGame& game, const std::string& label);

// BceOptions assembled from the file's options block.
BceOptions bce_options(const GameSpec& spec);

} // namespace rsg
