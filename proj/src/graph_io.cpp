#include "ggospa/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ggospa/error.hpp"

namespace ggospa {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k)
    if (text[k] == '\n') ++line;
  return line;
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field " + path + "." + key);
  return *it;
}

bool get_bool(const json& obj, const char* key) {
  const json& v = field(obj, key, "$");
  if (!v.is_boolean()) fail("field $." + std::string(key) + " must be a boolean");
  return v.get<bool>();
}

std::size_t get_index(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail("field " + path + " must be an integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const auto s = v.get<std::int64_t>();
  if (s < 0) fail("field " + path + " must be non-negative");
  return static_cast<std::size_t>(s);
}

double get_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail("field " + path + " must be a number");
  return v.get<double>();
}

}  // namespace

ValidatedGraph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) fail("top-level value must be an object");

  Graph g;
  g.directed = get_bool(doc, "directed");
  g.weighted = get_bool(doc, "weighted");

  const json& nodes = field(doc, "nodes", "$");
  if (!nodes.is_array()) fail("field $.nodes must be an array");
  g.nodes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "$.nodes[" + std::to_string(i) + "]";
    const json& node = nodes[i];
    if (!node.is_object()) fail(path + " must be an object");
    Node out;
    auto it = node.find("attr");
    if (it != node.end() && !it->is_null()) {
      if (!it->is_array()) fail(path + ".attr must be an array or null");
      std::vector<double> attr;
      attr.reserve(it->size());
      for (std::size_t k = 0; k < it->size(); ++k)
        attr.push_back(get_double((*it)[k], path + ".attr[" + std::to_string(k) + "]"));
      out.attr = std::move(attr);
    }
    g.nodes.push_back(std::move(out));
  }

  const json& edges = field(doc, "edges", "$");
  if (!edges.is_array()) fail("field $.edges must be an array");
  g.edges.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "$.edges[" + std::to_string(k) + "]";
    const json& edge = edges[k];
    if (!edge.is_object()) fail(path + " must be an object");
    Edge e;
    e.u = get_index(field(edge, "u", path), path + ".u");
    e.v = get_index(field(edge, "v", path), path + ".v");
    if (auto w = edge.find("w"); w != edge.end()) e.weight = get_double(*w, path + ".w");
    g.edges.push_back(e);
  }

  try {
    return validate(std::move(g));
  } catch (const Error& e) {
    fail(std::string("invalid graph: ") + e.what());
  }
}

std::string write_graph_json(const ValidatedGraph& vg, int indent) {
  const Graph& g = vg.graph();
  json doc;
  doc["directed"] = g.directed;
  doc["weighted"] = g.weighted;
  json nodes = json::array();
  for (const Node& n : g.nodes) {
    json node;
    node["attr"] = n.attr ? json(*n.attr) : json(nullptr);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const Edge& e : g.edges) {
    json edge;
    edge["u"] = e.u;
    edge["v"] = e.v;
    edge["w"] = e.weight;
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(indent);
}

ValidatedGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph_json(buf.str());
  } catch (const Error& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_graph_file(const std::filesystem::path& path, const ValidatedGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
  out << write_graph_json(g, 2) << '\n';
}

}  // namespace ggospa
