#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "malevic/datasetgen.hpp"

namespace malevic {

// JSONL: line 1 is a header object, each following line one datapoint.
void serialize(const DatasetManifest& manifest, std::ostream& out);
void serialize(const DatasetManifest& manifest, const std::filesystem::path& path);

// Throws SchemaError carrying the 1-based line number and a dotted field path.
DatasetManifest load(std::istream& in);
DatasetManifest load(const std::filesystem::path& path);

// Single-scene JSON, as embedded in manifest lines.
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

}  // namespace malevic
