#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "geocast/error.hpp"
#include "geocast/topology.hpp"

namespace geocast {

namespace {

namespace pt = boost::property_tree;

class NodeIndex {
 public:
  explicit NodeIndex(RawGraph& g) : g_(g) {}

  std::size_t intern(const std::string& id) {
    if (auto it = index_.find(id); it != index_.end()) return it->second;
    const auto idx = g_.ids.size();
    index_.emplace(id, idx);
    g_.ids.push_back(id);
    g_.coords.emplace_back();
    return idx;
  }

  bool contains(const std::string& id) const { return index_.contains(id); }

 private:
  RawGraph& g_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::optional<double> to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == 0) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

Topology load_graphml(std::string_view bytes, std::string name) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(fmt::format("GraphML: {}", e.what()));
  }
  const auto root = doc.get_child_optional("graphml");
  if (!root) throw ParseError("GraphML: missing <graphml> root element");

  std::string lat_key;
  std::string lon_key;
  std::string name_key;
  for (const auto& [tag, child] : *root) {
    if (tag != "key") continue;
    // "attr.name" contains the default path separator
    const auto attr = child.get<std::string>(pt::ptree::path_type("<xmlattr>/attr.name", '/'), "");
    const auto id = child.get<std::string>("<xmlattr>.id", "");
    const auto domain = child.get<std::string>("<xmlattr>.for", "");
    if (attr == "Latitude" && domain != "graph") lat_key = id;
    if (attr == "Longitude" && domain != "graph") lon_key = id;
    if (attr == "Network" && domain == "graph") name_key = id;
  }

  const auto graph = root->get_child_optional("graph");
  if (!graph) throw ParseError("GraphML: missing <graph> element");

  RawGraph raw;
  NodeIndex nodes(raw);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [tag, child] : *graph) {
    if (tag == "data") {
      if (!name_key.empty() && child.get<std::string>("<xmlattr>.key", "") == name_key && name.empty())
        name = child.data();
    } else if (tag == "node") {
      const auto id = child.get<std::string>("<xmlattr>.id", "");
      if (id.empty()) throw ParseError("GraphML: <node> without id");
      if (nodes.contains(id)) throw ParseError(fmt::format("GraphML: duplicate node id '{}'", id));
      const auto idx = nodes.intern(id);
      std::optional<double> lat;
      std::optional<double> lon;
      for (const auto& [dtag, data] : child) {
        if (dtag != "data") continue;
        const auto key = data.get<std::string>("<xmlattr>.key", "");
        if (!lat_key.empty() && key == lat_key) lat = to_double(data.data());
        if (!lon_key.empty() && key == lon_key) lon = to_double(data.data());
      }
      if (lat && lon) raw.coords[idx] = Coordinates{*lat, *lon};
    } else if (tag == "edge") {
      const auto src = child.get<std::string>("<xmlattr>.source", "");
      const auto dst = child.get<std::string>("<xmlattr>.target", "");
      if (src.empty() || dst.empty()) throw ParseError("GraphML: <edge> without source/target");
      edges.emplace_back(src, dst);
    }
  }
  for (const auto& [s, d] : edges) {
    if (!nodes.contains(s) || !nodes.contains(d))
      throw ParseError(fmt::format("GraphML: edge {}-{} references an undeclared node", s, d));
    raw.edges.emplace_back(nodes.intern(s), nodes.intern(d));
  }
  raw.name = name.empty() ? "graph" : std::move(name);
  return Topology::normalize(std::move(raw));
}

Topology load_edge_list(std::string_view text, std::string name) {
  RawGraph raw;
  raw.name = name.empty() ? "graph" : std::move(name);
  NodeIndex nodes(raw);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first.starts_with('#')) {
      std::string word = first == "#" ? "" : first.substr(1);
      if (word.empty()) fields >> word;
      if (word != "coord") continue;
      std::string id;
      double lat = 0;
      double lon = 0;
      if (!(fields >> id >> lat >> lon)) throw ParseError(fmt::format("line {}: malformed coord line", line_no));
      raw.coords[nodes.intern(id)] = Coordinates{lat, lon};
      continue;
    }
    std::string second;
    if (!(fields >> second)) throw ParseError(fmt::format("line {}: expected 'u v'", line_no));
    std::string extra;
    if (fields >> extra) throw ParseError(fmt::format("line {}: trailing text '{}'", line_no, extra));
    const auto u = nodes.intern(first);
    const auto v = nodes.intern(second);
    raw.edges.emplace_back(u, v);
  }
  return Topology::normalize(std::move(raw));
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path p(path);
  const auto ext = p.extension().string();
  if (ext == ".graphml" || ext == ".xml") {
    // File stem beats the embedded network name so rows stay keyed by file.
    return load_graphml(buf.str(), p.stem().string());
  }
  return load_edge_list(buf.str(), p.stem().string());
}

}  // namespace geocast
