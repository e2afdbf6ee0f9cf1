#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsg/equilibria.hpp"
#include "rsg/gamefile.hpp"
#include "rsg/signaling.hpp"

namespace rsg {

// Outcome of checking a fixed policy carried by the game file.
struct ReferencePolicyCheck {
  ICReport ic;
  double value = 0.0;
  double poa = 0.0;
};

struct AnalysisResult {
  std::vector<CostMatrix> state_tables;
  CostMatrix expected;
  EquilibriumReport equilibria;
  BceSolution bce;
  ICReport bce_ic;
  double poa_bce = 0.0;
  bool ic_included = true;
  std::optional<ReferencePolicyCheck> reference;
};

// Full pipeline: state tables, expected table, equilibria, benchmarks, the
// mediator's optimal policy, and the file's reference policy when present.
AnalysisResult analyze_game(const GameSpec& spec, const BceOptions& options,
                            double tolerance = 1e-9);

// Human-readable report; deterministic byte-for-byte for equal inputs.
std::string render_text(const GameSpec& spec, const AnalysisResult& result);

// Machine-readable report (JSON) with full-precision numbers and the
// complete policy tables.
std::string export_analysis(const GameSpec& spec, const AnalysisResult& result);

// Shortest form with up to six significant digits ("%.6g").
std::string fmt(double v);

// Fixed decimals, ties to even: fmt_fixed(1.2308, 2) = "1.23".
std::string fmt_fixed(double v, int decimals);

} // namespace rsg
