#ifndef I2PR_GRAPH_IO_HPP_
#define I2PR_GRAPH_IO_HPP_

#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"

namespace i2pr {

// {"nodes":[...],"edges":[[src,dst],...]}, both lists in lexicographic
// order, followed by a newline. Identical graphs give identical bytes.
inline std::string write_graph_json(const DirectedGraph& g) {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::json::array();
  for (const auto& label : g.labels()) doc["nodes"].push_back(label);
  doc["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) doc["edges"].push_back({g.label(u), g.label(v)});
  return doc.dump() + "\n";
}

inline DirectedGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges") ||
      !doc["nodes"].is_array() || !doc["edges"].is_array()) {
    throw ParseError("graph JSON must be an object with 'nodes' and 'edges' arrays");
  }
  std::vector<std::string> labels;
  labels.reserve(doc["nodes"].size());
  for (const auto& node : doc["nodes"]) {
    if (!node.is_string()) throw ParseError("graph JSON: node labels must be strings");
    labels.push_back(node.get<std::string>());
  }
  std::vector<LabelEdge> edges;
  edges.reserve(doc["edges"].size());
  for (const auto& edge : doc["edges"]) {
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string()) {
      throw ParseError("graph JSON: each edge must be a [src, dst] pair of strings");
    }
    edges.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
  }
  try {
    return DirectedGraph::from_labels(std::move(labels), edges);
  } catch (const Error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
}

inline DirectedGraph read_graph_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON parse error: ") + e.what());
  }
  return graph_from_json(doc);
}

inline DirectedGraph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON parse error: ") + e.what());
  }
  return graph_from_json(doc);
}

}  // namespace i2pr

#endif  // I2PR_GRAPH_IO_HPP_
