#include "purfit/reference.hpp"

#include <numeric>

#include "purfit/errors.hpp"

namespace purfit {

std::string to_string(SupportMode mode) {
  switch (mode) {
    case SupportMode::full_cartesian: return "full_cartesian";
    case SupportMode::observed_predictors_all_labels:
      return "observed_predictors_all_labels";
    case SupportMode::observed_only: return "observed_only";
  }
  return "?";
}

SupportMode support_mode_from_string(const std::string& text) {
  if (text == "full_cartesian" || text == "full") return SupportMode::full_cartesian;
  if (text == "observed_predictors_all_labels" || text == "observed-predictors")
    return SupportMode::observed_predictors_all_labels;
  if (text == "observed_only" || text == "observed") return SupportMode::observed_only;
  throw ArgumentError("unknown support mode: " + text);
}

namespace {

// Every response label and every sensitive profile must keep at least one
// admissible cell (the standing assumption behind finite parity targets).
void check_standing_assumption(const SchemaPtr& schema,
                               const std::vector<std::uint8_t>& admissible) {
  std::vector<std::uint8_t> label_seen(schema->response_cells(), 0);
  std::vector<std::uint8_t> sensitive_seen(schema->protected_cells(), 0);
  MarginalLayout protected_layout(schema, schema->protected_subset());
  for (std::size_t a = 0; a < admissible.size(); ++a) {
    if (!admissible[a]) continue;
    label_seen[schema->digit(a, 0)] = 1;
    sensitive_seen[protected_layout.project(a)] = 1;
  }
  for (std::size_t y = 0; y < label_seen.size(); ++y)
    if (!label_seen[y])
      throw ArgumentError("support mask leaves response label '" +
                          schema->feature(0).categories[y] + "' without any admissible cell");
  for (std::size_t s = 0; s < sensitive_seen.size(); ++s)
    if (!sensitive_seen[s])
      throw ArgumentError("support mask leaves a sensitive profile without any admissible cell");
}

}  // namespace

SupportMask::SupportMask(SchemaPtr schema, std::vector<std::uint8_t> admissible)
    : schema_(std::move(schema)), admissible_(std::move(admissible)) {
  if (!schema_) throw ArgumentError("support mask needs a schema");
  if (admissible_.size() != schema_->cell_count())
    throw ArgumentError("support mask size does not match schema cell count");
  for (auto& v : admissible_) v = v ? 1 : 0;
  admissible_count_ = static_cast<std::size_t>(
      std::accumulate(admissible_.begin(), admissible_.end(), std::size_t{0}));
  if (admissible_count_ == 0) throw ArgumentError("support mask admits no cells");
  check_standing_assumption(schema_, admissible_);
}

SupportMask SupportMask::full(SchemaPtr schema) {
  std::vector<std::uint8_t> all(schema->cell_count(), 1);
  return SupportMask(std::move(schema), std::move(all));
}

SupportMask SupportMask::from_empirical(const JointTable& f, SupportMode mode) {
  const auto& schema = f.schema();
  std::vector<std::uint8_t> admissible(schema->cell_count(), 0);
  switch (mode) {
    case SupportMode::full_cartesian:
      admissible.assign(schema->cell_count(), 1);
      break;
    case SupportMode::observed_only:
      for (std::size_t a = 0; a < f.size(); ++a) admissible[a] = f[a] > 0.0 ? 1 : 0;
      break;
    case SupportMode::observed_predictors_all_labels: {
      MarginalTable predictors = marginalize(f, schema->realism_subset());
      const MarginalLayout& layout = predictors.layout();
      for (std::size_t a = 0; a < f.size(); ++a)
        admissible[a] = predictors[layout.project(a)] > 0.0 ? 1 : 0;
      break;
    }
  }
  return SupportMask(schema, std::move(admissible));
}

JointTable pseudo_count_regularize(const JointTable& f, std::uint64_t sample_size,
                                   const RegularizationConfig& config) {
  return pseudo_count_regularize(f, sample_size, config.lambda,
                                 SupportMask::from_empirical(f, config.support_mode));
}

JointTable pseudo_count_regularize(const JointTable& f, std::uint64_t sample_size,
                                   double lambda, const SupportMask& mask) {
  if (lambda < 0.0) throw ArgumentError("lambda must be non-negative");
  if (sample_size == 0) throw ArgumentError("sample size must be at least 1");
  if (!same_schema(f.schema(), mask.schema()))
    throw ArgumentError("support mask was built for a different schema");
  if (lambda == 0.0) return f;

  const double pseudo = lambda / static_cast<double>(sample_size);
  const double denom = 1.0 + static_cast<double>(mask.admissible_count()) * pseudo;
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t a = 0; a < f.size(); ++a)
    if (mask.admissible(a)) out[a] = (f[a] + pseudo) / denom;
  return JointTable(f.schema(), std::move(out));
}

JointTable uniform_reference(const SchemaPtr& schema, const SupportMask& mask) {
  if (!same_schema(schema, mask.schema()))
    throw ArgumentError("support mask was built for a different schema");
  const double p = 1.0 / static_cast<double>(mask.admissible_count());
  std::vector<double> out(schema->cell_count(), 0.0);
  for (std::size_t a = 0; a < out.size(); ++a)
    if (mask.admissible(a)) out[a] = p;
  return JointTable(schema, std::move(out));
}

}  // namespace purfit
