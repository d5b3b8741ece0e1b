#include "purfit/ipf.hpp"

#include <cmath>

#include "purfit/errors.hpp"
#include "purfit/metrics.hpp"

namespace purfit {

void apply_fit(std::vector<double>& values, const MarginalConstraint& constraint) {
  const auto& layout = constraint.target.layout();
  const std::size_t rows = constraint.target.size();

  std::vector<double> current(rows, 0.0);
  for (std::size_t a = 0; a < values.size(); ++a)
    current[layout.project(a)] += values[a];

  std::vector<double> ratio(rows, 1.0);
  for (std::size_t m = 0; m < rows; ++m) {
    if (!constraint.row_active(m)) continue;  // dropped row, cells are pinned at 0
    const double target = constraint.target[m];
    if (target == 0.0) {
      ratio[m] = 0.0;
    } else if (current[m] == 0.0) {
      throw IllPosedReferenceError(
          "reference assigns no mass to a " + to_string(constraint.kind) +
          " row with positive target");
    } else {
      ratio[m] = target / current[m];
    }
  }

  for (std::size_t a = 0; a < values.size(); ++a)
    values[a] *= ratio[layout.project(a)];
}

namespace {

double max_residual(const std::vector<double>& values, const ConstraintSet& set) {
  double worst = 0.0;
  std::vector<double> marg;
  for (const auto& c : set.constraints()) {
    const auto& layout = c.target.layout();
    marg.assign(c.target.size(), 0.0);
    for (std::size_t a = 0; a < values.size(); ++a)
      marg[layout.project(a)] += values[a];
    for (std::size_t m = 0; m < marg.size(); ++m) {
      if (!c.row_active(m)) continue;
      const double diff = std::abs(marg[m] - c.target[m]);
      if (diff > worst) worst = diff;
    }
  }
  return worst;
}

}  // namespace

ProjectionResult project(const JointTable& reference, const ConstraintSet& set,
                         const SolverOptions& opts) {
  if (!same_schema(reference.schema(), set.schema()))
    throw ArgumentError("reference and constraint set use different schemas");
  if (!(opts.tolerance > 0.0)) throw ArgumentError("solver tolerance must be positive");
  if (opts.max_cycles < 1) throw ArgumentError("max_cycles must be at least 1");

  std::vector<double> p = reference.values();
  if (!set.forced_zero().empty())
    for (std::size_t a = 0; a < p.size(); ++a)
      if (set.forced_zero()[a]) p[a] = 0.0;

  ProjectionDiagnostics diag;
  for (std::size_t cycle = 1; cycle <= opts.max_cycles; ++cycle) {
    for (const auto& c : set.constraints()) apply_fit(p, c);
    diag.cycles_used = cycle;
    diag.final_residual = max_residual(p, set);
    if (opts.record_trace) diag.residual_trace.push_back(diag.final_residual);
    if (diag.final_residual <= opts.tolerance) {
      diag.converged = true;
      break;
    }
  }

  JointTable result(reference.schema(), std::move(p));
  diag.kl_to_reference = kl_divergence(result, reference);
  if (!diag.converged)
    throw NonConvergenceError(
        "IPF did not reach residual " + std::to_string(opts.tolerance) + " within " +
            std::to_string(opts.max_cycles) + " cycles (possible infeasibility)",
        std::move(diag));
  return {std::move(result), std::move(diag)};
}

double pythagorean_check(const JointTable& p, const JointTable& q, const JointTable& q0) {
  const double d_p_q0 = kl_divergence(p, q0);
  const double d_p_q = kl_divergence(p, q);
  const double d_q_q0 = kl_divergence(q, q0);
  if (!std::isfinite(d_p_q0) || !std::isfinite(d_p_q) || !std::isfinite(d_q_q0))
    throw SupportError("KL divergence is infinite; supports are incompatible");
  return d_p_q0 - d_p_q - d_q_q0;
}

}  // namespace purfit
