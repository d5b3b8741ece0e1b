#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "purfit/tables.hpp"

namespace purfit {

enum class FeatureRole { response, protected_attr, unprotected_attr };

// Maps one raw CSV column onto a categorical feature.
//   categories: the raw value must already be one of the labels
//   merge:      raw values are renamed/grouped through an explicit map
//   intervals:  numeric values fall into half-open bins split at `edges`
//               ((-inf, e0), [e0, e1), ..., [ek, inf)); one more label than
//               edges
struct BinningRule {
  enum class Type { categories, merge, intervals };
  Type type = Type::categories;
  std::vector<std::string> labels;
  std::map<std::string, std::string> merge_map;
  std::vector<double> edges;

  // Label for a raw value, or nullopt when unmappable.
  std::optional<std::string> apply(const std::string& raw) const;
};

struct FeatureBinding {
  std::string name;
  FeatureRole role = FeatureRole::unprotected_attr;
  std::string column;
  BinningRule rule;
};

enum class MissingPolicy { reject_record, error };

struct IngestConfig {
  std::vector<FeatureBinding> features;   // declaration order fixes the schema order
  std::vector<std::string> missing_values;
  MissingPolicy policy = MissingPolicy::reject_record;

  static IngestConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  SchemaPtr schema() const;  // validates the declaration
};

struct IngestReport {
  std::uint64_t records_read = 0;
  std::uint64_t records_accepted = 0;
  std::uint64_t records_rejected = 0;
  // Accepted category tallies per feature, schema order.
  std::vector<std::vector<std::uint64_t>> category_counts;

  nlohmann::json to_json(const Schema& schema) const;
};

struct IngestResult {
  CountTable counts;
  IngestReport report;
};

IngestResult ingest_csv(const std::filesystem::path& csv_path, const IngestConfig& config);

}  // namespace purfit
