#pragma once

#include <string>
#include <utility>

#include "arglab/table.hpp"

namespace arglab {

/// JSON layout: {"name":..., "labels":[...], "header":[...sorted], "rows":[[...]...]}.
/// Output is deterministic: fixed key order, 2-space indent, trailing newline.
std::string table_to_json(const ArgLabellingTable& table, const std::string& name);
std::pair<std::string, ArgLabellingTable> table_from_json(const std::string& text);

/// First line is the sorted header, remaining lines are label names.
std::string table_to_csv(const ArgLabellingTable& table);
ArgLabellingTable table_from_csv(const std::string& text,
                                 const LabelAlphabet& alphabet = LabelAlphabet());

/// Aligned text rendering for terminals.
std::string table_to_text(const ArgLabellingTable& table);

/// Manifest layout: {"labels":[...], "tables":[{"name":..., "path":...}...]};
/// table paths are resolved relative to the manifest file.
Database load_manifest(const std::string& manifest_path);

/// Writes <name>.json per table plus the manifest itself into `directory`.
void save_manifest(const Database& db, const std::string& directory,
                   const std::string& manifest_name = "manifest.json");

}  // namespace arglab
