#include "purfit/ingest.hpp"

#include <algorithm>
#include <cstdlib>

#include "purfit/csv.hpp"
#include "purfit/errors.hpp"

namespace purfit {

std::optional<std::string> BinningRule::apply(const std::string& raw) const {
  switch (type) {
    case Type::categories:
      if (std::find(labels.begin(), labels.end(), raw) != labels.end()) return raw;
      return std::nullopt;
    case Type::merge: {
      auto it = merge_map.find(raw);
      if (it == merge_map.end()) return std::nullopt;
      return it->second;
    }
    case Type::intervals: {
      char* end = nullptr;
      const double value = std::strtod(raw.c_str(), &end);
      if (end == raw.c_str() || *end != '\0') return std::nullopt;
      std::size_t bin = 0;
      while (bin < edges.size() && value >= edges[bin]) ++bin;
      return labels[bin];
    }
  }
  return std::nullopt;
}

namespace {

BinningRule rule_from_json(const nlohmann::json& doc) {
  BinningRule rule;
  const std::string type = doc.at("type").get<std::string>();
  if (type == "categories") {
    rule.type = BinningRule::Type::categories;
    rule.labels = doc.at("categories").get<std::vector<std::string>>();
  } else if (type == "merge") {
    rule.type = BinningRule::Type::merge;
    rule.labels = doc.at("labels").get<std::vector<std::string>>();
    for (const auto& [raw, label] : doc.at("map").items()) {
      if (std::find(rule.labels.begin(), rule.labels.end(), label.get<std::string>()) ==
          rule.labels.end())
        throw ArgumentError("merge map target '" + label.get<std::string>() +
                            "' is not a declared label");
      rule.merge_map[raw] = label.get<std::string>();
    }
  } else if (type == "intervals") {
    rule.type = BinningRule::Type::intervals;
    rule.labels = doc.at("labels").get<std::vector<std::string>>();
    rule.edges = doc.at("edges").get<std::vector<double>>();
    if (rule.labels.size() != rule.edges.size() + 1)
      throw ArgumentError("interval binning needs exactly one more label than edges");
    for (std::size_t i = 1; i < rule.edges.size(); ++i)
      if (!(rule.edges[i - 1] < rule.edges[i]))
        throw ArgumentError("interval edges must be strictly increasing");
  } else {
    throw ArgumentError("unknown binning type: " + type);
  }
  if (rule.labels.size() < 2)
    throw ArgumentError("every feature needs at least 2 category labels");
  return rule;
}

nlohmann::json rule_to_json(const BinningRule& rule) {
  switch (rule.type) {
    case BinningRule::Type::categories:
      return {{"type", "categories"}, {"categories", rule.labels}};
    case BinningRule::Type::merge:
      return {{"type", "merge"}, {"labels", rule.labels}, {"map", rule.merge_map}};
    case BinningRule::Type::intervals:
      return {{"type", "intervals"}, {"labels", rule.labels}, {"edges", rule.edges}};
  }
  return {};
}

FeatureRole role_from_string(const std::string& text) {
  if (text == "response") return FeatureRole::response;
  if (text == "protected") return FeatureRole::protected_attr;
  if (text == "unprotected") return FeatureRole::unprotected_attr;
  throw ArgumentError("unknown feature role: " + text);
}

std::string role_to_string(FeatureRole role) {
  switch (role) {
    case FeatureRole::response: return "response";
    case FeatureRole::protected_attr: return "protected";
    case FeatureRole::unprotected_attr: return "unprotected";
  }
  return "?";
}

}  // namespace

IngestConfig IngestConfig::from_json(const nlohmann::json& doc) {
  IngestConfig config;
  for (const auto& f : doc.at("features")) {
    FeatureBinding binding;
    binding.name = f.at("name").get<std::string>();
    binding.role = role_from_string(f.at("role").get<std::string>());
    binding.column = f.value("column", binding.name);
    binding.rule = rule_from_json(f.at("binning"));
    config.features.push_back(std::move(binding));
  }
  if (doc.contains("missing_values"))
    config.missing_values = doc.at("missing_values").get<std::vector<std::string>>();
  const std::string policy = doc.value("missing_policy", "reject");
  if (policy == "reject")
    config.policy = MissingPolicy::reject_record;
  else if (policy == "error")
    config.policy = MissingPolicy::error;
  else
    throw ArgumentError("unknown missing policy: " + policy);
  config.schema();  // validate the declaration eagerly
  return config;
}

nlohmann::json IngestConfig::to_json() const {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : this->features)
    features.push_back({{"name", f.name},
                        {"role", role_to_string(f.role)},
                        {"column", f.column},
                        {"binning", rule_to_json(f.rule)}});
  return {{"features", features},
          {"missing_values", missing_values},
          {"missing_policy", policy == MissingPolicy::reject_record ? "reject" : "error"}};
}

SchemaPtr IngestConfig::schema() const {
  std::optional<Feature> response;
  std::vector<Feature> protected_attrs;
  std::vector<Feature> unprotected_attrs;
  for (const auto& binding : features) {
    Feature feature{binding.name, binding.rule.labels};
    switch (binding.role) {
      case FeatureRole::response:
        if (response) throw ArgumentError("config declares more than one response feature");
        response = std::move(feature);
        break;
      case FeatureRole::protected_attr:
        protected_attrs.push_back(std::move(feature));
        break;
      case FeatureRole::unprotected_attr:
        unprotected_attrs.push_back(std::move(feature));
        break;
    }
  }
  if (!response) throw ArgumentError("config declares no response feature");
  if (protected_attrs.empty()) throw ArgumentError("config declares no protected feature");
  if (unprotected_attrs.empty())
    throw ArgumentError("config declares no unprotected feature");
  return Schema::make(std::move(*response), std::move(protected_attrs),
                      std::move(unprotected_attrs));
}

IngestResult ingest_csv(const std::filesystem::path& csv_path, const IngestConfig& config) {
  SchemaPtr schema = config.schema();
  CsvReader reader(csv_path);

  // Bind features to header columns; schema order = response, protected,
  // unprotected, each in declaration order.
  std::vector<const FeatureBinding*> schema_bindings(schema->feature_count(), nullptr);
  for (const auto& binding : config.features)
    schema_bindings[schema->feature_index(binding.name)] = &binding;
  std::vector<std::size_t> columns(schema->feature_count());
  for (std::size_t i = 0; i < schema_bindings.size(); ++i) {
    const auto& header = reader.header();
    auto it = std::find(header.begin(), header.end(), schema_bindings[i]->column);
    if (it == header.end())
      throw IngestError("CSV has no column '" + schema_bindings[i]->column +
                        "' required by feature '" + schema_bindings[i]->name + "'");
    columns[i] = static_cast<std::size_t>(it - header.begin());
  }

  IngestReport report;
  report.category_counts.resize(schema->feature_count());
  for (std::size_t i = 0; i < schema->feature_count(); ++i)
    report.category_counts[i].assign(schema->cardinality(i), 0);

  std::vector<std::uint64_t> cells(schema->cell_count(), 0);
  std::vector<std::string> fields;
  std::vector<std::size_t> digits(schema->feature_count());
  while (reader.next_record(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
    if (fields.size() != reader.header().size())
      throw IngestError("record " + std::to_string(reader.record_number()) + " has " +
                        std::to_string(fields.size()) + " fields, header has " +
                        std::to_string(reader.header().size()));
    ++report.records_read;

    bool rejected = false;
    for (std::size_t i = 0; i < schema->feature_count() && !rejected; ++i) {
      const std::string& raw = fields[columns[i]];
      const bool missing = std::find(config.missing_values.begin(),
                                     config.missing_values.end(),
                                     raw) != config.missing_values.end();
      std::optional<std::string> label =
          missing ? std::nullopt : schema_bindings[i]->rule.apply(raw);
      if (!label) {
        if (config.policy == MissingPolicy::error)
          throw IngestError("record " + std::to_string(reader.record_number()) +
                            ": value '" + raw + "' in column '" +
                            schema_bindings[i]->column + "' cannot be mapped");
        rejected = true;
        break;
      }
      digits[i] = schema->category_index(i, *label);
    }
    if (rejected) {
      ++report.records_rejected;
      continue;
    }
    ++report.records_accepted;
    for (std::size_t i = 0; i < digits.size(); ++i)
      report.category_counts[i][digits[i]] += 1;
    cells[schema->encode(digits)] += 1;
  }

  if (report.records_accepted == 0)
    throw IngestError("no records from " + csv_path.string() +
                      " could be mapped onto the schema");
  return {CountTable(schema, std::move(cells)), std::move(report)};
}

nlohmann::json IngestReport::to_json(const Schema& schema) const {
  nlohmann::json per_feature = nlohmann::json::object();
  for (std::size_t i = 0; i < category_counts.size(); ++i) {
    nlohmann::json tally = nlohmann::json::object();
    for (std::size_t c = 0; c < category_counts[i].size(); ++c)
      tally[schema.feature(i).categories[c]] = category_counts[i][c];
    per_feature[schema.feature(i).name] = std::move(tally);
  }
  return {{"records_read", records_read},
          {"records_accepted", records_accepted},
          {"records_rejected", records_rejected},
          {"category_counts", per_feature}};
}

}  // namespace purfit
