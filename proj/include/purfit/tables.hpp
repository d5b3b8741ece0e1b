#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "purfit/schema.hpp"

namespace purfit {

// Absolute tolerance on the total mass of a normalized table.
inline constexpr double kMassTolerance = 1e-12;

// Addressing for the Cartesian product of an ordered feature subset.
// project() maps a joint cell index onto the subset's flat index.
class MarginalLayout {
 public:
  MarginalLayout(SchemaPtr schema, std::vector<std::size_t> features);

  const SchemaPtr& schema() const noexcept { return schema_; }
  const std::vector<std::size_t>& features() const noexcept { return features_; }
  std::size_t cell_count() const noexcept { return cell_count_; }

  std::size_t project(std::size_t joint_index) const noexcept {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < features_.size(); ++i)
      idx += ((joint_index / joint_strides_[i]) % cards_[i]) * strides_[i];
    return idx;
  }

  std::size_t encode(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> decode(std::size_t index) const;
  std::vector<std::string> profile_of(std::size_t index) const;
  std::size_t index_of(std::span<const std::string> profile) const;

  bool operator==(const MarginalLayout& other) const;

 private:
  SchemaPtr schema_;
  std::vector<std::size_t> features_;
  std::vector<std::size_t> cards_;
  std::vector<std::size_t> joint_strides_;
  std::vector<std::size_t> strides_;  // row-major over `features_`
  std::size_t cell_count_ = 1;
};

// Normalized probability distribution over all M joint cells.
class JointTable {
 public:
  JointTable(SchemaPtr schema, std::vector<double> values);

  const SchemaPtr& schema() const noexcept { return schema_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double value_at(std::span<const std::string> profile) const;

 private:
  SchemaPtr schema_;
  std::vector<double> values_;
};

// Non-negative integer counts over all M joint cells.
class CountTable {
 public:
  CountTable(SchemaPtr schema, std::vector<std::uint64_t> counts);

  const SchemaPtr& schema() const noexcept { return schema_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t operator[](std::size_t i) const { return counts_[i]; }
  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }

 private:
  SchemaPtr schema_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Values over the Cartesian product of an ordered feature subset.
class MarginalTable {
 public:
  MarginalTable(MarginalLayout layout, std::vector<double> values);

  const MarginalLayout& layout() const noexcept { return layout_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  double mass() const noexcept;

  double value_at(std::span<const std::string> profile) const;

 private:
  MarginalLayout layout_;
  std::vector<double> values_;
};

// p(target | given). Slices with zero given-mass carry no probabilities and
// are reported through defined(); callers must pick their own fallback.
class ConditionalTable {
 public:
  ConditionalTable(MarginalLayout target, MarginalLayout given,
                   std::vector<double> values, std::vector<std::uint8_t> defined);

  const MarginalLayout& target() const noexcept { return target_; }
  const MarginalLayout& given() const noexcept { return given_; }
  bool defined(std::size_t given_index) const { return defined_.at(given_index) != 0; }
  double value(std::size_t target_index, std::size_t given_index) const {
    return values_[given_index * target_.cell_count() + target_index];
  }
  std::size_t undefined_slices() const noexcept;

 private:
  MarginalLayout target_;
  MarginalLayout given_;
  std::vector<double> values_;  // given-major
  std::vector<std::uint8_t> defined_;
};

MarginalTable marginalize(const JointTable& table, std::vector<std::size_t> features);
MarginalTable marginalize(const JointTable& table, std::span<const std::string> feature_names);

ConditionalTable conditional(const JointTable& table, std::vector<std::size_t> target,
                             std::vector<std::size_t> given);

JointTable normalize(const CountTable& counts);

}  // namespace purfit
