#pragma once

#include <cstdint>
#include <vector>

#include "purfit/tables.hpp"

namespace purfit {

enum class SupportMode {
  full_cartesian,
  observed_predictors_all_labels,
  observed_only,
};

std::string to_string(SupportMode mode);
SupportMode support_mode_from_string(const std::string& text);

struct RegularizationConfig {
  double lambda = 1e-4;
  SupportMode support_mode = SupportMode::observed_predictors_all_labels;
};

// Per-cell admissibility. Every response label and every sensitive profile
// must keep at least one admissible cell; construction rejects masks that
// break that assumption.
class SupportMask {
 public:
  SupportMask(SchemaPtr schema, std::vector<std::uint8_t> admissible);

  static SupportMask full(SchemaPtr schema);
  static SupportMask from_empirical(const JointTable& f, SupportMode mode);

  const SchemaPtr& schema() const noexcept { return schema_; }
  bool admissible(std::size_t cell) const { return admissible_[cell] != 0; }
  const std::vector<std::uint8_t>& cells() const noexcept { return admissible_; }
  std::size_t admissible_count() const noexcept { return admissible_count_; }
  std::size_t size() const noexcept { return admissible_.size(); }

 private:
  SchemaPtr schema_;
  std::vector<std::uint8_t> admissible_;
  std::size_t admissible_count_ = 0;
};

// Pseudo-count smoothing: each admissible cell receives lambda/N and the
// total is renormalized over the admissible support. lambda = 0 returns the
// input unchanged; cells outside the support stay exactly 0.
JointTable pseudo_count_regularize(const JointTable& f, std::uint64_t sample_size,
                                   const RegularizationConfig& config);
JointTable pseudo_count_regularize(const JointTable& f, std::uint64_t sample_size,
                                   double lambda, const SupportMask& mask);

// Equal probability on every admissible cell, 0 elsewhere.
JointTable uniform_reference(const SchemaPtr& schema, const SupportMask& mask);

}  // namespace purfit
