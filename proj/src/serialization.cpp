#include "purfit/serialization.hpp"

#include <fstream>

#include "purfit/errors.hpp"
#include "purfit/rng.hpp"

namespace purfit {

namespace {

nlohmann::json feature_to_json(const Feature& f) {
  return {{"name", f.name}, {"categories", f.categories}};
}

Feature feature_from_json(const nlohmann::json& doc) {
  Feature f;
  f.name = doc.at("name").get<std::string>();
  f.categories = doc.at("categories").get<std::vector<std::string>>();
  return f;
}

void require_type(const nlohmann::json& doc, std::string_view type) {
  if (!doc.is_object() || doc.value("type", "") != type)
    throw ArgumentError("expected a \"" + std::string(type) + "\" document");
}

}  // namespace

nlohmann::json schema_to_json(const Schema& schema) {
  nlohmann::json protected_list = nlohmann::json::array();
  nlohmann::json unprotected_list = nlohmann::json::array();
  for (std::size_t i = 1; i <= schema.protected_count(); ++i)
    protected_list.push_back(feature_to_json(schema.feature(i)));
  for (std::size_t i = 1 + schema.protected_count(); i < schema.feature_count(); ++i)
    unprotected_list.push_back(feature_to_json(schema.feature(i)));
  return {{"response", feature_to_json(schema.feature(0))},
          {"protected", protected_list},
          {"unprotected", unprotected_list}};
}

SchemaPtr schema_from_json(const nlohmann::json& doc) {
  std::vector<Feature> protected_attrs;
  std::vector<Feature> unprotected_attrs;
  for (const auto& f : doc.at("protected")) protected_attrs.push_back(feature_from_json(f));
  for (const auto& f : doc.at("unprotected"))
    unprotected_attrs.push_back(feature_from_json(f));
  return Schema::make(feature_from_json(doc.at("response")), std::move(protected_attrs),
                      std::move(unprotected_attrs));
}

nlohmann::json to_json(const JointTable& table) {
  return {{"type", "joint_table"},
          {"layout", "row-major"},
          {"schema", schema_to_json(*table.schema())},
          {"values", table.values()}};
}

nlohmann::json to_json(const CountTable& table) {
  return {{"type", "count_table"},
          {"layout", "row-major"},
          {"schema", schema_to_json(*table.schema())},
          {"total", table.total()},
          {"counts", table.counts()}};
}

JointTable joint_table_from_json(const nlohmann::json& doc) {
  require_type(doc, "joint_table");
  if (doc.value("layout", "") != "row-major")
    throw ArgumentError("unsupported table layout");
  return JointTable(schema_from_json(doc.at("schema")),
                    doc.at("values").get<std::vector<double>>());
}

CountTable count_table_from_json(const nlohmann::json& doc) {
  require_type(doc, "count_table");
  if (doc.value("layout", "") != "row-major")
    throw ArgumentError("unsupported table layout");
  return CountTable(schema_from_json(doc.at("schema")),
                    doc.at("counts").get<std::vector<std::uint64_t>>());
}

nlohmann::json to_json(const ConstraintSet& set) {
  nlohmann::json constraints = nlohmann::json::array();
  for (const auto& c : set.constraints()) {
    nlohmann::json features = nlohmann::json::array();
    for (auto f : c.target.layout().features())
      features.push_back(set.schema()->feature(f).name);
    nlohmann::json entry = {{"kind", to_string(c.kind)},
                            {"features", features},
                            {"values", c.target.values()}};
    if (!c.active.empty()) entry["active"] = c.active;
    constraints.push_back(std::move(entry));
  }
  nlohmann::json forced = nlohmann::json::array();
  for (std::size_t a = 0; a < set.forced_zero().size(); ++a)
    if (set.forced_zero()[a]) forced.push_back(a);
  return {{"type", "constraint_set"},
          {"mode", to_string(set.mode())},
          {"schema", schema_to_json(*set.schema())},
          {"constraints", constraints},
          {"forced_zero_cells", forced}};
}

std::string config_hash(const nlohmann::json& parameters) {
  const std::string dump = parameters.dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

nlohmann::json make_manifest(const std::string& command, nlohmann::json parameters) {
  return {{"type", "run_manifest"},
          {"version", std::string(kVersion)},
          {"command", command},
          {"prng", std::string(kPrngAlgorithm)},
          {"config_hash", config_hash(parameters)},
          {"parameters", std::move(parameters)}};
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ArgumentError("invalid JSON in " + path.string() + ": " + err.what());
  }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace purfit
