#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "atlas/network.hpp"

namespace atlas {

// JSON graph document:
//   { "vertices": V, "darts": [[a, b], ...], "rotations": [[...], ...],
//     "conductances": [...], "root": r, "absorbing": [...],
//     "outer_dart": d (optional), "flags": ["triangulation"] (optional) }
// A "header" member, if present, is ignored on input.
// Throws kParse with a line number for malformed text or fields.
RotationSystem parse_graph(std::string_view text);
PlanarNetwork read_graph(const std::filesystem::path& path);

nlohmann::json graph_to_json(const PlanarNetwork& net);
std::string format_graph(const PlanarNetwork& net, const nlohmann::json& header = nullptr);
void write_graph(const PlanarNetwork& net, const std::filesystem::path& path,
                 const nlohmann::json& header = nullptr);

// Reads a whole file; throws kIo.
std::string read_text_file(const std::filesystem::path& path);
// Writes a whole file; throws kIo. Returns true if it replaced an existing file.
bool write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace atlas
