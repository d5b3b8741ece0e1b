#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "purfit/reference.hpp"
#include "purfit/tables.hpp"

namespace purfit {

enum class ConstraintKind { parity, utility, realism };

enum class ConstraintMode { p, pu, pur };

std::string to_string(ConstraintKind kind);
std::string to_string(ConstraintMode mode);
ConstraintMode constraint_mode_from_string(const std::string& text);

// One block of marginal conditions: a feature subset (the summation pattern)
// and the target values its marginal must take. The binary coefficient
// matrix is never materialized; applying a "row" is marginalization over the
// complementary features.
struct MarginalConstraint {
  ConstraintKind kind;
  MarginalTable target;
  // Rows dropped by zero-marginal reduction; same length as the target.
  // Empty means every row is active.
  std::vector<std::uint8_t> active;

  bool row_active(std::size_t m) const { return active.empty() || active[m] != 0; }
  std::size_t active_rows() const;
};

class ConstraintSet {
 public:
  ConstraintSet(SchemaPtr schema, ConstraintMode mode,
                std::vector<MarginalConstraint> constraints,
                std::vector<std::uint8_t> forced_zero = {});

  const SchemaPtr& schema() const noexcept { return schema_; }
  ConstraintMode mode() const noexcept { return mode_; }
  const std::vector<MarginalConstraint>& constraints() const noexcept { return constraints_; }
  // Per-cell flags; empty when no cell is pinned to zero.
  const std::vector<std::uint8_t>& forced_zero() const noexcept { return forced_zero_; }
  bool cell_forced_zero(std::size_t cell) const {
    return !forced_zero_.empty() && forced_zero_[cell] != 0;
  }

  // Same constraints applied in a different order; the fitting order is taken
  // from the constraint list order.
  ConstraintSet reordered(const std::vector<ConstraintKind>& order) const;

 private:
  SchemaPtr schema_;
  ConstraintMode mode_;
  std::vector<MarginalConstraint> constraints_;
  std::vector<std::uint8_t> forced_zero_;
};

// Builds the parity / utility / realism targets from an empirical
// distribution. The parity target is the outer product f(y) x f(s); utility
// and realism targets are f's own marginals.
ConstraintSet build_constraints(const JointTable& f, ConstraintMode mode);

// Zero-marginal reduction: cells excluded by the mask or covered by a zero
// target are pinned to 0, and zero-target rows are dropped. Throws
// InfeasibilityError when a positive target row loses all of its cells.
ConstraintSet reduce(const ConstraintSet& set, const SupportMask& mask);

// Max-norm violation over all active marginal rows.
double residual(const JointTable& p, const ConstraintSet& set);

}  // namespace purfit
