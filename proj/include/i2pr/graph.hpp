#ifndef I2PR_GRAPH_HPP_
#define I2PR_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "i2pr/error.hpp"

namespace i2pr {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;
using LabelEdge = std::pair<std::string, std::string>;

inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Simple, loop-free directed graph over string labels.
///
/// Node ids are positions in the lexicographically sorted label list, so
/// comparing ids is the same as comparing labels. A graph is an immutable
/// value: `remove_node` and `with_node` return new snapshots and leave the
/// receiver untouched, which makes sharing across threads safe.
class DirectedGraph {
 public:
  struct Removal;

  DirectedGraph() = default;

  /// Builds from labels in strictly ascending order and id-based edges.
  /// Throws InvalidArgumentError on duplicate or unsorted labels, empty or
  /// untrimmed labels, out-of-range endpoints, self-loops or parallel edges.
  DirectedGraph(std::vector<std::string> sorted_labels, std::span<const Edge> edges)
      : labels_(std::move(sorted_labels)), out_(labels_.size()), in_(labels_.size()) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      const auto& label = labels_[i];
      if (label.empty() || trim(label).size() != label.size()) {
        throw InvalidArgumentError("node label must be non-empty and trimmed: '" + label + "'");
      }
      if (i > 0 && !(labels_[i - 1] < label)) {
        throw InvalidArgumentError("node labels must be unique and sorted near '" + label + "'");
      }
    }
    if (labels_.size() > std::size_t{UINT32_MAX}) throw InvalidArgumentError("too many nodes");
    const auto n = labels_.size();
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n) throw InvalidArgumentError("edge endpoint out of range");
      if (u == v) throw InvalidArgumentError("self-loop on '" + labels_[u] + "'");
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (std::size_t u = 0; u < n; ++u) {
      std::sort(out_[u].begin(), out_[u].end());
      std::sort(in_[u].begin(), in_[u].end());
      if (std::adjacent_find(out_[u].begin(), out_[u].end()) != out_[u].end()) {
        throw InvalidArgumentError("parallel edge from '" + labels_[u] + "'");
      }
    }
    edge_count_ = edges.size();
  }

  /// Builds from labels in any order plus label-based edges. Every edge
  /// endpoint must appear in `labels`.
  static DirectedGraph from_labels(std::vector<std::string> labels,
                                   std::span<const LabelEdge> edges) {
    std::sort(labels.begin(), labels.end());
    std::vector<Edge> ids;
    ids.reserve(edges.size());
    auto lookup = [&](const std::string& label) {
      auto it = std::lower_bound(labels.begin(), labels.end(), label);
      if (it == labels.end() || *it != label) throw UnknownNodeError(label);
      return static_cast<NodeId>(it - labels.begin());
    };
    for (const auto& [src, dst] : edges) ids.emplace_back(lookup(src), lookup(dst));
    return DirectedGraph(std::move(labels), ids);
  }

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const std::string> labels() const noexcept { return labels_; }
  const std::string& label(NodeId id) const { return labels_.at(id); }

  std::optional<NodeId> find(std::string_view label) const noexcept {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<NodeId>(it - labels_.begin());
  }

  bool contains(std::string_view label) const noexcept { return find(label).has_value(); }

  NodeId id_of(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw UnknownNodeError(std::string(label));
  }

  std::span<const NodeId> out_neighbors(NodeId u) const { return out_.at(u); }
  std::span<const NodeId> in_neighbors(NodeId u) const { return in_.at(u); }

  std::size_t out_degree(NodeId u) const { return out_.at(u).size(); }
  std::size_t in_degree(NodeId u) const { return in_.at(u).size(); }
  std::size_t degree(NodeId u) const { return out_degree(u) + in_degree(u); }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& row = out_.at(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  /// All edges, ascending by (src, dst); equivalently by label pair.
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (NodeId u = 0; u < out_.size(); ++u) {
      for (NodeId v : out_[u]) result.emplace_back(u, v);
    }
    return result;
  }

  /// Neighbour lists of the undirected skeleton: direction dropped,
  /// reciprocal arcs merged. Each list is sorted and duplicate-free.
  std::vector<std::vector<NodeId>> undirected_adjacency() const {
    std::vector<std::vector<NodeId>> adj(node_count());
    for (std::size_t u = 0; u < node_count(); ++u) {
      auto& row = adj[u];
      row.reserve(out_[u].size() + in_[u].size());
      std::set_union(out_[u].begin(), out_[u].end(), in_[u].begin(), in_[u].end(),
                     std::back_inserter(row));
    }
    return adj;
  }

  /// New snapshot without `label` and its incident edges.
  Removal remove_node(std::string_view label) const;

  /// New snapshot with an extra isolated node.
  DirectedGraph with_node(std::string label) const {
    if (contains(label)) throw InvalidArgumentError("node already present: '" + label + "'");
    auto labels = labels_;
    labels.insert(std::upper_bound(labels.begin(), labels.end(), label), label);
    const NodeId at = id_of_in(labels, label);
    auto shift = [at](NodeId x) { return x >= at ? x + 1 : x; };
    std::vector<Edge> moved;
    moved.reserve(edge_count_);
    for (const auto& [u, v] : edges()) moved.emplace_back(shift(u), shift(v));
    return DirectedGraph(std::move(labels), moved);
  }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  static NodeId id_of_in(const std::vector<std::string>& labels, const std::string& label) {
    return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), label) -
                               labels.begin());
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::size_t edge_count_ = 0;
};

struct DirectedGraph::Removal {
  DirectedGraph graph;
  std::size_t removed_in = 0;
  std::size_t removed_out = 0;
};

inline DirectedGraph::Removal DirectedGraph::remove_node(std::string_view label) const {
  const NodeId gone = id_of(label);
  std::vector<std::string> labels;
  labels.reserve(labels_.size() - 1);
  for (NodeId i = 0; i < labels_.size(); ++i) {
    if (i != gone) labels.push_back(labels_[i]);
  }
  auto remap = [gone](NodeId x) { return x > gone ? x - 1 : x; };
  std::vector<Edge> kept;
  kept.reserve(edge_count_ - degree(gone));
  for (NodeId u = 0; u < out_.size(); ++u) {
    if (u == gone) continue;
    for (NodeId v : out_[u]) {
      if (v != gone) kept.emplace_back(remap(u), remap(v));
    }
  }
  return Removal{DirectedGraph(std::move(labels), kept), in_degree(gone), out_degree(gone)};
}

}  // namespace i2pr

#endif  // I2PR_GRAPH_HPP_
