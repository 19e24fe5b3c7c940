#include "atlas/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "atlas/error.hpp"

namespace atlas {

namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the first occurrence of a member key, 0 if absent.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

[[noreturn]] void field_error(std::string_view text, std::string_view key, const std::string& what) {
  const std::size_t line = line_of_key(text, key);
  std::string msg = "field '" + std::string(key) + "': " + what;
  if (line) msg = "line " + std::to_string(line) + ": " + msg;
  throw Error(ErrorCode::kParse, msg);
}

template <class T>
T get_field(const json& doc, std::string_view text, const char* key) {
  if (!doc.contains(key)) field_error(text, key, "missing");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    field_error(text, key, e.what());
  }
}

}  // namespace

RotationSystem parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "line 1: graph document must be an object");

  RotationSystem spec;
  spec.num_vertices = get_field<std::size_t>(doc, text, "vertices");
  for (const auto& pair : get_field<std::vector<std::vector<std::size_t>>>(doc, text, "darts")) {
    if (pair.size() != 2) field_error(text, "darts", "each entry must be a pair");
    spec.dart_pairs.emplace_back(pair[0], pair[1]);
  }
  spec.rotations = get_field<std::vector<std::vector<std::size_t>>>(doc, text, "rotations");
  spec.conductances = get_field<std::vector<double>>(doc, text, "conductances");
  spec.root = get_field<std::size_t>(doc, text, "root");
  spec.absorbing = get_field<std::vector<std::size_t>>(doc, text, "absorbing");
  if (doc.contains("outer_dart") && !doc["outer_dart"].is_null()) {
    spec.outer_dart = get_field<std::size_t>(doc, text, "outer_dart");
  }
  if (doc.contains("flags")) {
    for (const auto& flag : get_field<std::vector<std::string>>(doc, text, "flags")) {
      if (flag == "triangulation") {
        spec.triangulation = true;
      } else {
        field_error(text, "flags", "unknown flag '" + flag + "'");
      }
    }
  }
  return spec;
}

PlanarNetwork read_graph(const std::filesystem::path& path) {
  return build_network(parse_graph(read_text_file(path)));
}

nlohmann::json graph_to_json(const PlanarNetwork& net) {
  const RotationSystem spec = net.to_rotation_system();
  json doc;
  doc["vertices"] = spec.num_vertices;
  json darts = json::array();
  for (const auto& [a, b] : spec.dart_pairs) darts.push_back({a, b});
  doc["darts"] = std::move(darts);
  doc["rotations"] = spec.rotations;
  doc["conductances"] = spec.conductances;
  doc["root"] = spec.root;
  doc["absorbing"] = spec.absorbing;
  if (spec.outer_dart) doc["outer_dart"] = *spec.outer_dart;
  doc["flags"] = spec.triangulation ? json::array({"triangulation"}) : json::array();
  return doc;
}

std::string format_graph(const PlanarNetwork& net, const nlohmann::json& header) {
  // Header first, then the graph members in a fixed order.
  const json doc = graph_to_json(net);
  nlohmann::ordered_json out;
  if (!header.is_null()) out["header"] = header;
  for (const char* key : {"vertices", "darts", "rotations", "conductances", "root", "absorbing", "outer_dart", "flags"}) {
    if (doc.contains(key)) out[key] = doc[key];
  }
  return out.dump(1) + "\n";
}

void write_graph(const PlanarNetwork& net, const std::filesystem::path& path, const nlohmann::json& header) {
  write_text_file(path, format_graph(net, header));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_text_file(const std::filesystem::path& path, std::string_view text) {
  const bool existed = std::filesystem::exists(path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
  return existed;
}

}  // namespace atlas
