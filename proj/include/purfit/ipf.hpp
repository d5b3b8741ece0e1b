#pragma once

#include <cstdint>
#include <vector>

#include "purfit/constraints.hpp"
#include "purfit/tables.hpp"

namespace purfit {

struct SolverOptions {
  // Max marginal residual accepted as converged, measured after a full cycle.
  double tolerance = 1e-10;
  std::size_t max_cycles = 10000;
  bool record_trace = false;
};

struct ProjectionDiagnostics {
  bool converged = false;
  std::size_t cycles_used = 0;
  double final_residual = 0.0;
  double kl_to_reference = 0.0;
  std::vector<double> residual_trace;  // per-cycle, when recorded
};

struct ProjectionResult {
  JointTable table;
  ProjectionDiagnostics diagnostics;
};

// Thrown when max_cycles is exhausted with the residual above tolerance;
// carries the diagnostics (and trace when recorded) as the operational
// infeasibility signal.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, ProjectionDiagnostics diag)
      : std::runtime_error(what), diagnostics(std::move(diag)) {}
  ProjectionDiagnostics diagnostics;
};

// One multiplicative fit of a single constraint: every covered cell is
// scaled by target/current for its marginal row. Rows with zero target zero
// their cells; a positive target over a vanished marginal throws
// IllPosedReferenceError. After the call the constraint's marginal matches
// its target exactly (up to rounding).
void apply_fit(std::vector<double>& values, const MarginalConstraint& constraint);

// Iterative proportional fitting from `reference` onto the constraint set,
// cycling the constraints in the set's order until the max marginal residual
// drops to opts.tolerance.
ProjectionResult project(const JointTable& reference, const ConstraintSet& set,
                         const SolverOptions& opts = {});

// D(p||q0) - D(p||q) - D(q||q0); vanishes when q is the information
// projection of q0 onto a set containing p. Throws SupportError when any
// term is infinite.
double pythagorean_check(const JointTable& p, const JointTable& q, const JointTable& q0);

}  // namespace purfit
