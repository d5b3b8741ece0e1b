#include "purfit/tables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "purfit/errors.hpp"

namespace purfit {

MarginalLayout::MarginalLayout(SchemaPtr schema, std::vector<std::size_t> features)
    : schema_(std::move(schema)), features_(std::move(features)) {
  if (!schema_) throw ArgumentError("layout needs a schema");
  if (features_.empty()) throw ArgumentError("feature subset must not be empty");
  std::unordered_set<std::size_t> seen;
  for (auto f : features_) {
    if (f >= schema_->feature_count()) throw ArgumentError("feature index out of range");
    if (!seen.insert(f).second) throw ArgumentError("feature subset contains a duplicate");
  }
  cards_.reserve(features_.size());
  joint_strides_.reserve(features_.size());
  for (auto f : features_) {
    cards_.push_back(schema_->cardinality(f));
    joint_strides_.push_back(schema_->stride(f));
  }
  strides_.assign(features_.size(), 1);
  for (std::size_t i = features_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * cards_[i];
  cell_count_ = strides_[0] * cards_[0];
}

std::size_t MarginalLayout::encode(std::span<const std::size_t> digits) const {
  if (digits.size() != features_.size()) throw ArgumentError("digit arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= cards_[i]) throw ArgumentError("category index out of range");
    idx += digits[i] * strides_[i];
  }
  return idx;
}

std::vector<std::size_t> MarginalLayout::decode(std::size_t index) const {
  if (index >= cell_count_) throw ArgumentError("marginal cell index out of range");
  std::vector<std::size_t> digits(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i)
    digits[i] = (index / strides_[i]) % cards_[i];
  return digits;
}

std::vector<std::string> MarginalLayout::profile_of(std::size_t index) const {
  auto digits = decode(index);
  std::vector<std::string> out(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i)
    out[i] = schema_->feature(features_[i]).categories[digits[i]];
  return out;
}

std::size_t MarginalLayout::index_of(std::span<const std::string> profile) const {
  if (profile.size() != features_.size()) throw ArgumentError("profile arity mismatch");
  std::vector<std::size_t> digits(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i)
    digits[i] = schema_->category_index(features_[i], profile[i]);
  return encode(digits);
}

bool MarginalLayout::operator==(const MarginalLayout& other) const {
  return same_schema(schema_, other.schema_) && features_ == other.features_;
}

JointTable::JointTable(SchemaPtr schema, std::vector<double> values)
    : schema_(std::move(schema)), values_(std::move(values)) {
  if (!schema_) throw ArgumentError("joint table needs a schema");
  if (values_.size() != schema_->cell_count())
    throw ArgumentError("joint table size does not match schema cell count");
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0)) throw ArgumentError("joint table values must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kMassTolerance)
    throw ArgumentError("joint table mass " + std::to_string(sum) + " is not 1");
}

double JointTable::value_at(std::span<const std::string> profile) const {
  return values_[schema_->index_of(profile)];
}

CountTable::CountTable(SchemaPtr schema, std::vector<std::uint64_t> counts)
    : schema_(std::move(schema)), counts_(std::move(counts)) {
  if (!schema_) throw ArgumentError("count table needs a schema");
  if (counts_.size() != schema_->cell_count())
    throw ArgumentError("count table size does not match schema cell count");
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

MarginalTable::MarginalTable(MarginalLayout layout, std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (values_.size() != layout_.cell_count())
    throw ArgumentError("marginal table size does not match its layout");
  for (double v : values_)
    if (!(v >= 0.0)) throw ArgumentError("marginal values must be non-negative");
}

double MarginalTable::mass() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double MarginalTable::value_at(std::span<const std::string> profile) const {
  return values_[layout_.index_of(profile)];
}

ConditionalTable::ConditionalTable(MarginalLayout target, MarginalLayout given,
                                   std::vector<double> values,
                                   std::vector<std::uint8_t> defined)
    : target_(std::move(target)),
      given_(std::move(given)),
      values_(std::move(values)),
      defined_(std::move(defined)) {
  if (values_.size() != target_.cell_count() * given_.cell_count())
    throw ArgumentError("conditional table size mismatch");
  if (defined_.size() != given_.cell_count())
    throw ArgumentError("conditional defined-mask size mismatch");
}

std::size_t ConditionalTable::undefined_slices() const noexcept {
  return static_cast<std::size_t>(
      std::count(defined_.begin(), defined_.end(), std::uint8_t{0}));
}

MarginalTable marginalize(const JointTable& table, std::vector<std::size_t> features) {
  MarginalLayout layout(table.schema(), std::move(features));
  std::vector<double> out(layout.cell_count(), 0.0);
  const auto& v = table.values();
  for (std::size_t a = 0; a < v.size(); ++a) out[layout.project(a)] += v[a];
  return MarginalTable(std::move(layout), std::move(out));
}

MarginalTable marginalize(const JointTable& table, std::span<const std::string> feature_names) {
  return marginalize(table, table.schema()->subset(feature_names));
}

ConditionalTable conditional(const JointTable& table, std::vector<std::size_t> target,
                             std::vector<std::size_t> given) {
  for (auto t : target)
    for (auto g : given)
      if (t == g) throw ArgumentError("target and given subsets must be disjoint");

  MarginalLayout target_layout(table.schema(), target);
  MarginalLayout given_layout(table.schema(), given);

  auto joined = target;
  joined.insert(joined.end(), given.begin(), given.end());
  MarginalTable joint = marginalize(table, std::move(joined));
  MarginalTable given_marg = marginalize(table, given);

  const std::size_t t_cells = target_layout.cell_count();
  const std::size_t g_cells = given_layout.cell_count();
  std::vector<double> values(t_cells * g_cells, 0.0);
  std::vector<std::uint8_t> defined(g_cells, 0);

  // `joint` is laid out row-major over (target..., given...), so its flat
  // index is t * g_cells + g.
  for (std::size_t g = 0; g < g_cells; ++g) {
    const double mass = given_marg[g];
    if (mass > 0.0) {
      defined[g] = 1;
      for (std::size_t t = 0; t < t_cells; ++t)
        values[g * t_cells + t] = joint[t * g_cells + g] / mass;
    }
  }
  return ConditionalTable(std::move(target_layout), std::move(given_layout),
                          std::move(values), std::move(defined));
}

JointTable normalize(const CountTable& counts) {
  if (counts.total() == 0) throw ArgumentError("cannot normalize an empty count table");
  const double n = static_cast<double>(counts.total());
  std::vector<double> values(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    values[i] = static_cast<double>(counts[i]) / n;
  return JointTable(counts.schema(), std::move(values));
}

}  // namespace purfit
