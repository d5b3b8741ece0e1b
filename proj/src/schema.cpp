#include "purfit/schema.hpp"

#include <algorithm>
#include <unordered_set>

#include "purfit/errors.hpp"

namespace purfit {

Schema::Schema(Feature response, std::vector<Feature> protected_attrs,
               std::vector<Feature> unprotected_attrs) {
  features_.reserve(1 + protected_attrs.size() + unprotected_attrs.size());
  features_.push_back(std::move(response));
  protected_count_ = protected_attrs.size();
  for (auto& f : protected_attrs) features_.push_back(std::move(f));
  for (auto& f : unprotected_attrs) features_.push_back(std::move(f));

  std::unordered_set<std::string_view> names;
  for (const auto& f : features_) {
    if (f.name.empty()) throw ArgumentError("feature name must not be empty");
    if (!names.insert(f.name).second)
      throw ArgumentError("duplicate feature name: " + f.name);
    if (f.categories.size() < 2)
      throw ArgumentError("feature '" + f.name + "' needs at least 2 categories");
    std::unordered_set<std::string_view> cats;
    for (const auto& c : f.categories)
      if (!cats.insert(c).second)
        throw ArgumentError("duplicate category '" + c + "' in feature '" + f.name + "'");
  }

  strides_.assign(features_.size(), 1);
  for (std::size_t i = features_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * features_[i].categories.size();
  cell_count_ = strides_[0] * features_[0].categories.size();
}

std::shared_ptr<const Schema> Schema::make(Feature response,
                                           std::vector<Feature> protected_attrs,
                                           std::vector<Feature> unprotected_attrs) {
  return std::make_shared<const Schema>(std::move(response), std::move(protected_attrs),
                                        std::move(unprotected_attrs));
}

std::size_t Schema::feature_index(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i].name == name) return i;
  throw ArgumentError("unknown feature: " + std::string(name));
}

std::size_t Schema::category_index(std::size_t feature, std::string_view category) const {
  const auto& cats = features_.at(feature).categories;
  for (std::size_t i = 0; i < cats.size(); ++i)
    if (cats[i] == category) return i;
  throw ArgumentError("unknown category '" + std::string(category) + "' for feature '" +
                      features_[feature].name + "'");
}

std::size_t Schema::protected_cells() const noexcept {
  std::size_t n = 1;
  for (std::size_t i = 1; i <= protected_count_; ++i) n *= features_[i].categories.size();
  return n;
}

std::size_t Schema::unprotected_cells() const noexcept {
  std::size_t n = 1;
  for (std::size_t i = 1 + protected_count_; i < features_.size(); ++i)
    n *= features_[i].categories.size();
  return n;
}

std::vector<std::size_t> Schema::response_subset() const { return {0}; }

std::vector<std::size_t> Schema::protected_subset() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= protected_count_; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> Schema::unprotected_subset() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1 + protected_count_; i < features_.size(); ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> Schema::parity_subset() const {
  auto out = response_subset();
  for (auto i : protected_subset()) out.push_back(i);
  return out;
}

std::vector<std::size_t> Schema::utility_subset() const {
  auto out = response_subset();
  for (auto i : unprotected_subset()) out.push_back(i);
  return out;
}

std::vector<std::size_t> Schema::realism_subset() const {
  auto out = protected_subset();
  for (auto i : unprotected_subset()) out.push_back(i);
  return out;
}

std::vector<std::size_t> Schema::subset(std::span<const std::string> names) const {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(feature_index(n));
  return out;
}

std::size_t Schema::encode(std::span<const std::size_t> digits) const {
  if (digits.size() != features_.size())
    throw ArgumentError("profile arity does not match schema");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= features_[i].categories.size())
      throw ArgumentError("category index out of range for feature '" + features_[i].name + "'");
    idx += digits[i] * strides_[i];
  }
  return idx;
}

std::vector<std::size_t> Schema::decode(std::size_t index) const {
  if (index >= cell_count_) throw ArgumentError("cell index out of range");
  std::vector<std::size_t> digits(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i) digits[i] = digit(index, i);
  return digits;
}

std::size_t Schema::index_of(std::span<const std::string> profile) const {
  if (profile.size() != features_.size())
    throw ArgumentError("profile arity does not match schema");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < profile.size(); ++i)
    idx += category_index(i, profile[i]) * strides_[i];
  return idx;
}

std::vector<std::string> Schema::profile_of(std::size_t index) const {
  auto digits = decode(index);
  std::vector<std::string> out(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i)
    out[i] = features_[i].categories[digits[i]];
  return out;
}

bool Schema::operator==(const Schema& other) const {
  if (protected_count_ != other.protected_count_) return false;
  if (features_.size() != other.features_.size()) return false;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name != other.features_[i].name) return false;
    if (features_[i].categories != other.features_[i].categories) return false;
  }
  return true;
}

bool same_schema(const SchemaPtr& a, const SchemaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace purfit
