#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "purfit/constraints.hpp"
#include "purfit/tables.hpp"

namespace purfit {

inline constexpr std::string_view kVersion = "0.1.0";

nlohmann::json schema_to_json(const Schema& schema);
SchemaPtr schema_from_json(const nlohmann::json& doc);

// Table documents: {"type": ..., "layout": "row-major", "schema": ..., values/counts}.
nlohmann::json to_json(const JointTable& table);
nlohmann::json to_json(const CountTable& table);
JointTable joint_table_from_json(const nlohmann::json& doc);
CountTable count_table_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ConstraintSet& set);

// FNV-1a 64 over the compact dump; hex string.
std::string config_hash(const nlohmann::json& parameters);

// {"type":"run_manifest", version, command, prng, parameters, config_hash}.
nlohmann::json make_manifest(const std::string& command, nlohmann::json parameters);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace purfit
