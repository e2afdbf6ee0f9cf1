#pragma once

#include <iosfwd>
#include <vector>

namespace rsg {

enum class LPStatus { Optimal, Infeasible, Unbounded };

// Dense linear program in the form
//   minimize   c.x
//   subject to eq_lhs.x == eq_rhs
//              le_lhs.x <= le_rhs
//              x >= 0
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_lhs;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> le_lhs;
  std::vector<double> le_rhs;

  std::size_t variable_count() const { return objective.size(); }
};

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<double> x;        // empty unless Optimal
  double objective_value = 0.0; // c.x when Optimal
};

const char* to_string(LPStatus status);

// Two-phase primal simplex on a dense tableau. Bland's rule throughout
// (lowest eligible entering index, ratio ties broken by lowest basic
// index), so the pivot path is deterministic and cycling-free.
// Throws std::invalid_argument on dimension mismatches or non-finite data.
LPSolution solve_lp(const LinearProgram& lp, double tolerance = 1e-9);

// Brute-force ground truth for small instances: enumerates every choice of
// n active constraints (rows and x_j >= 0 walls), keeps the feasible basic
// points, and detects unboundedness by scanning extreme rays of the
// recession cone. Refuses instances with more than 8 variables.
LPSolution vertex_oracle(const LinearProgram& lp);

// Writes the program in CPLEX LP text format (objective row first, then
// constraint rows; variables are x1..xn and default to >= 0), readable by
// common external solvers for cross-checking.
void write_lp_format(const LinearProgram& lp, std::ostream& out);

} // namespace rsg
