#pragma once

#include <stdexcept>

namespace rsg {

// Input that could not be read as the structured file format at all.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates game invariants.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A solver broke an internal contract (e.g. a program that is feasible by
// construction reported infeasible).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace rsg
