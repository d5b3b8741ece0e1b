#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace purfit {

struct Feature {
  std::string name;
  std::vector<std::string> categories;
};

// Declares the response, protected and unprotected features together with
// their finite category domains, and owns the flat cell enumeration over
// their Cartesian product.
//
// Enumeration convention: row-major over (response, protected..., unprotected...)
// in declaration order, i.e. the last declared feature varies fastest.
class Schema {
 public:
  Schema(Feature response, std::vector<Feature> protected_attrs,
         std::vector<Feature> unprotected_attrs);

  static std::shared_ptr<const Schema> make(Feature response,
                                            std::vector<Feature> protected_attrs,
                                            std::vector<Feature> unprotected_attrs);

  std::size_t feature_count() const noexcept { return features_.size(); }
  const Feature& feature(std::size_t i) const { return features_.at(i); }
  std::size_t feature_index(std::string_view name) const;
  std::size_t cardinality(std::size_t feature) const { return features_.at(feature).categories.size(); }
  std::size_t category_index(std::size_t feature, std::string_view category) const;

  std::size_t protected_count() const noexcept { return protected_count_; }
  std::size_t unprotected_count() const noexcept { return features_.size() - 1 - protected_count_; }

  // Cell counts: M = |Y| * |S| * |X|.
  std::size_t cell_count() const noexcept { return cell_count_; }
  std::size_t response_cells() const noexcept { return features_[0].categories.size(); }
  std::size_t protected_cells() const noexcept;
  std::size_t unprotected_cells() const noexcept;

  // Feature-index subsets used throughout: {Y}, S..., X..., and the three
  // constraint patterns {Y,S...}, {Y,X...}, {S...,X...}.
  std::vector<std::size_t> response_subset() const;
  std::vector<std::size_t> protected_subset() const;
  std::vector<std::size_t> unprotected_subset() const;
  std::vector<std::size_t> parity_subset() const;
  std::vector<std::size_t> utility_subset() const;
  std::vector<std::size_t> realism_subset() const;
  std::vector<std::size_t> subset(std::span<const std::string> names) const;

  // Flat enumeration. `digits` / `profile` follow declaration order.
  std::size_t encode(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> decode(std::size_t index) const;
  std::size_t digit(std::size_t index, std::size_t feature) const {
    return (index / strides_[feature]) % features_[feature].categories.size();
  }
  std::size_t stride(std::size_t feature) const { return strides_.at(feature); }

  std::size_t index_of(std::span<const std::string> profile) const;
  std::vector<std::string> profile_of(std::size_t index) const;

  bool operator==(const Schema& other) const;

 private:
  std::vector<Feature> features_;  // response first, then protected, then unprotected
  std::size_t protected_count_ = 0;
  std::vector<std::size_t> strides_;
  std::size_t cell_count_ = 0;
};

using SchemaPtr = std::shared_ptr<const Schema>;

// True when both tables refer to the same schema (pointer or content equality).
bool same_schema(const SchemaPtr& a, const SchemaPtr& b);

}  // namespace purfit
