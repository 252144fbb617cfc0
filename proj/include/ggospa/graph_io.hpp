#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ggospa/graph.hpp"

namespace ggospa {

/// Parses the graph JSON document
///   {"directed": bool, "weighted": bool,
///    "nodes": [{"attr": [f64, ...] | null}, ...],
///    "edges": [{"u": int, "v": int, "w": f64}, ...]}
/// ("w" defaults to 1.0) and validates it. Malformed JSON, schema
/// violations and invariant violations all surface as ParseError, with the
/// line number or field path in the message.
ValidatedGraph parse_graph_json(std::string_view text);

/// Serializes in the same schema. Doubles are written with round-trip
/// precision, so parse_graph_json(write_graph_json(g)) == g.
std::string write_graph_json(const ValidatedGraph& g, int indent = -1);

ValidatedGraph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const ValidatedGraph& g);

}  // namespace ggospa
