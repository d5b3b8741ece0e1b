#include "purfit/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "purfit/errors.hpp"

namespace purfit {

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::parity: return "parity";
    case ConstraintKind::utility: return "utility";
    case ConstraintKind::realism: return "realism";
  }
  return "?";
}

std::string to_string(ConstraintMode mode) {
  switch (mode) {
    case ConstraintMode::p: return "p";
    case ConstraintMode::pu: return "pu";
    case ConstraintMode::pur: return "pur";
  }
  return "?";
}

ConstraintMode constraint_mode_from_string(const std::string& text) {
  if (text == "p" || text == "P") return ConstraintMode::p;
  if (text == "pu" || text == "PU") return ConstraintMode::pu;
  if (text == "pur" || text == "PUR") return ConstraintMode::pur;
  throw ArgumentError("unknown constraint mode: " + text);
}

std::size_t MarginalConstraint::active_rows() const {
  if (active.empty()) return target.size();
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), std::uint8_t{1}));
}

ConstraintSet::ConstraintSet(SchemaPtr schema, ConstraintMode mode,
                             std::vector<MarginalConstraint> constraints,
                             std::vector<std::uint8_t> forced_zero)
    : schema_(std::move(schema)),
      mode_(mode),
      constraints_(std::move(constraints)),
      forced_zero_(std::move(forced_zero)) {
  if (!schema_) throw ArgumentError("constraint set needs a schema");
  if (constraints_.empty()) throw ArgumentError("constraint set must not be empty");
  for (const auto& c : constraints_) {
    if (!same_schema(c.target.layout().schema(), schema_))
      throw ArgumentError("constraint target built for a different schema");
    if (!c.active.empty() && c.active.size() != c.target.size())
      throw ArgumentError("constraint active-mask size mismatch");
  }
  if (!forced_zero_.empty() && forced_zero_.size() != schema_->cell_count())
    throw ArgumentError("forced-zero mask size mismatch");
}

ConstraintSet ConstraintSet::reordered(const std::vector<ConstraintKind>& order) const {
  if (order.size() != constraints_.size())
    throw ArgumentError("reorder list must name each constraint exactly once");
  std::vector<MarginalConstraint> permuted;
  permuted.reserve(constraints_.size());
  for (auto kind : order) {
    auto it = std::find_if(constraints_.begin(), constraints_.end(),
                           [kind](const MarginalConstraint& c) { return c.kind == kind; });
    if (it == constraints_.end())
      throw ArgumentError("reorder names a constraint kind not present in the set");
    permuted.push_back(*it);
  }
  for (std::size_t i = 0; i < permuted.size(); ++i)
    for (std::size_t j = i + 1; j < permuted.size(); ++j)
      if (permuted[i].kind == permuted[j].kind)
        throw ArgumentError("reorder list repeats a constraint kind");
  return ConstraintSet(schema_, mode_, std::move(permuted), forced_zero_);
}

ConstraintSet build_constraints(const JointTable& f, ConstraintMode mode) {
  const auto& schema = f.schema();
  std::vector<MarginalConstraint> constraints;

  // Parity: target(y, s) = f(y) * f(s).
  MarginalTable y_marg = marginalize(f, schema->response_subset());
  MarginalTable s_marg = marginalize(f, schema->protected_subset());
  MarginalLayout parity_layout(schema, schema->parity_subset());
  std::vector<double> parity(parity_layout.cell_count());
  const std::size_t s_cells = s_marg.size();
  for (std::size_t y = 0; y < y_marg.size(); ++y)
    for (std::size_t s = 0; s < s_cells; ++s)
      parity[y * s_cells + s] = y_marg[y] * s_marg[s];
  constraints.push_back({ConstraintKind::parity,
                         MarginalTable(std::move(parity_layout), std::move(parity)),
                         {}});

  if (mode == ConstraintMode::pu || mode == ConstraintMode::pur)
    constraints.push_back({ConstraintKind::utility,
                           marginalize(f, schema->utility_subset()),
                           {}});
  if (mode == ConstraintMode::pur)
    constraints.push_back({ConstraintKind::realism,
                           marginalize(f, schema->realism_subset()),
                           {}});

  return ConstraintSet(schema, mode, std::move(constraints));
}

ConstraintSet reduce(const ConstraintSet& set, const SupportMask& mask) {
  const auto& schema = set.schema();
  if (!same_schema(schema, mask.schema()))
    throw ArgumentError("support mask was built for a different schema");
  const std::size_t cells = schema->cell_count();

  std::vector<std::uint8_t> forced(cells, 0);
  for (std::size_t a = 0; a < cells; ++a)
    if (!mask.admissible(a) || set.cell_forced_zero(a)) forced[a] = 1;

  // Zero targets pin every covered cell; positive rows never force anything,
  // so one sweep reaches the fixpoint.
  for (const auto& c : set.constraints()) {
    const auto& layout = c.target.layout();
    for (std::size_t a = 0; a < cells; ++a)
      if (c.target[layout.project(a)] == 0.0) forced[a] = 1;
  }

  std::vector<MarginalConstraint> reduced;
  reduced.reserve(set.constraints().size());
  for (const auto& c : set.constraints()) {
    const auto& layout = c.target.layout();
    std::vector<std::uint8_t> active(c.target.size(), 0);
    std::vector<std::uint8_t> covered_alive(c.target.size(), 0);
    for (std::size_t a = 0; a < cells; ++a)
      if (!forced[a]) covered_alive[layout.project(a)] = 1;
    for (std::size_t m = 0; m < c.target.size(); ++m) {
      if (c.target[m] == 0.0) continue;  // dropped row
      if (!covered_alive[m])
        throw InfeasibilityError("constraint " + to_string(c.kind) +
                                 " has a positive target whose cells are all forced to zero");
      active[m] = 1;
    }
    reduced.push_back({c.kind, c.target, std::move(active)});
  }

  return ConstraintSet(schema, set.mode(), std::move(reduced), std::move(forced));
}

double residual(const JointTable& p, const ConstraintSet& set) {
  if (!same_schema(p.schema(), set.schema()))
    throw ArgumentError("table and constraint set use different schemas");
  double worst = 0.0;
  std::vector<double> marg;
  for (const auto& c : set.constraints()) {
    const auto& layout = c.target.layout();
    marg.assign(c.target.size(), 0.0);
    for (std::size_t a = 0; a < p.size(); ++a) marg[layout.project(a)] += p[a];
    for (std::size_t m = 0; m < marg.size(); ++m) {
      if (!c.row_active(m)) continue;
      worst = std::max(worst, std::abs(marg[m] - c.target[m]));
    }
  }
  return worst;
}

}  // namespace purfit
