#ifndef I2PR_CENTRALITY_HPP_
#define I2PR_CENTRALITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"

namespace i2pr {

enum class Measure { kInDegree, kOutDegree, kTotalDegree, kBetweenness, kCloseness, kEigenvector };

inline constexpr std::pair<Measure, std::string_view> kMeasureNames[] = {
    {Measure::kInDegree, "in-degree"},       {Measure::kOutDegree, "out-degree"},
    {Measure::kTotalDegree, "total-degree"}, {Measure::kBetweenness, "betweenness"},
    {Measure::kCloseness, "closeness"},      {Measure::kEigenvector, "eigenvector"},
};

inline std::string_view to_string(Measure m) {
  for (const auto& [measure, name] : kMeasureNames) {
    if (measure == m) return name;
  }
  return "?";
}

inline Measure parse_measure(std::string_view name) {
  for (const auto& [measure, n] : kMeasureNames) {
    if (n == name) return measure;
  }
  throw InvalidArgumentError("unknown centrality measure '" + std::string(name) + "'");
}

inline bool is_degree_measure(Measure m) noexcept {
  return m == Measure::kInDegree || m == Measure::kOutDegree || m == Measure::kTotalDegree;
}

struct EigenvectorOptions {
  double tolerance = 1e-12;  // max-norm change between normalized iterates
  int max_iterations = 1000;
};

// Brandes' accumulation over directed BFS trees. Pairs (s, t) contribute
// sigma_sv * sigma_vt / sigma_st to every interior v.
inline std::vector<double> betweenness_values(const DirectedGraph& g) {
  const auto n = g.node_count();
  std::vector<double> result(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : g.out_neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    // predecessors of w are its in-neighbours one level closer to s
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId w = order[i];
      const double share = (1.0 + delta[w]) / sigma[w];
      for (NodeId v : g.in_neighbors(w)) {
        if (dist[v] >= 0 && dist[v] + 1 == dist[w]) delta[v] += sigma[v] * share;
      }
      result[w] += delta[w];
    }
  }
  return result;
}

/// Harmonic out-closeness: sum over reachable v != u of 1/d(u, v), divided by n - 1.
inline std::vector<double> closeness_values(const DirectedGraph& g) {
  const auto n = g.node_count();
  std::vector<double> result(n, 0.0);
  if (n < 2) return result;
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    double sum = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      for (NodeId v : g.out_neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          sum += 1.0 / static_cast<double>(dist[v]);
          queue.push_back(v);
        }
      }
    }
    result[s] = sum / static_cast<double>(n - 1);
  }
  return result;
}

/// Perron vector of the in-edge aggregation x_v <- sum_{u->v} x_u, scaled to
/// max 1. Iterates with (I + A^T), which has the same dominant eigenvector
/// but no periodic oscillation on bipartite or cyclic structure.
inline std::vector<double> eigenvector_values(const DirectedGraph& g,
                                              const EigenvectorOptions& options = {}) {
  if (g.edge_count() == 0) throw DegenerateGraphError("eigenvector centrality needs at least 1 edge");
  const auto n = g.node_count();
  std::vector<double> x(n, 1.0), next(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double peak = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double sum = x[v];
      for (NodeId u : g.in_neighbors(v)) sum += x[u];
      next[v] = sum;
      peak = std::max(peak, sum);
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      next[v] /= peak;
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < options.tolerance) return x;
  }
  throw ConvergenceError("eigenvector centrality did not converge in " +
                         std::to_string(options.max_iterations) + " iterations");
}

inline std::vector<double> centrality_values(const DirectedGraph& g, Measure measure,
                                             const EigenvectorOptions& eigen = {}) {
  std::vector<double> values(g.node_count());
  switch (measure) {
    case Measure::kInDegree:
      for (NodeId u = 0; u < values.size(); ++u) values[u] = static_cast<double>(g.in_degree(u));
      return values;
    case Measure::kOutDegree:
      for (NodeId u = 0; u < values.size(); ++u) values[u] = static_cast<double>(g.out_degree(u));
      return values;
    case Measure::kTotalDegree:
      for (NodeId u = 0; u < values.size(); ++u) values[u] = static_cast<double>(g.degree(u));
      return values;
    case Measure::kBetweenness: return betweenness_values(g);
    case Measure::kCloseness: return closeness_values(g);
    case Measure::kEigenvector: return eigenvector_values(g, eigen);
  }
  return values;
}

struct RankedNode {
  std::string label;
  double score = 0.0;

  friend bool operator==(const RankedNode&, const RankedNode&) = default;
};

/// Scores of one measure for every node of a graph, in node-label order.
class CentralityScores {
 public:
  CentralityScores(Measure measure, std::vector<std::string> labels, std::vector<double> values)
      : measure_(measure), labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.size() != values_.size()) throw InvalidArgumentError("labels/values size mismatch");
    if (!std::is_sorted(labels_.begin(), labels_.end())) {
      std::vector<std::size_t> order(labels_.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });
      std::vector<std::string> labels;
      std::vector<double> values;
      for (auto i : order) {
        labels.push_back(std::move(labels_[i]));
        values.push_back(values_[i]);
      }
      labels_ = std::move(labels);
      values_ = std::move(values);
    }
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
      throw InvalidArgumentError("duplicate label in centrality scores");
    }
  }

  Measure measure() const noexcept { return measure_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double at(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == labels_.end() || *it != label) throw UnknownNodeError(std::string(label));
    return values_[static_cast<std::size_t>(it - labels_.begin())];
  }

 private:
  Measure measure_;
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

inline CentralityScores centrality_scores(const DirectedGraph& g, Measure measure,
                                          const EigenvectorOptions& eigen = {}) {
  if (g.empty()) throw DegenerateGraphError("centrality of an empty graph");
  auto values = centrality_values(g, measure, eigen);
  return CentralityScores(measure, {g.labels().begin(), g.labels().end()}, std::move(values));
}

// Node ids by descending value, ties by ascending id (= ascending label).
inline std::vector<NodeId> ranking(std::span<const double> values, std::size_t k) {
  std::vector<NodeId> ids(values.size());
  for (NodeId i = 0; i < ids.size(); ++i) ids[i] = i;
  k = std::min(k, ids.size());
  auto before = [&](NodeId a, NodeId b) {
    return values[a] != values[b] ? values[a] > values[b] : a < b;
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), before);
  ids.resize(k);
  return ids;
}

inline std::vector<RankedNode> top_k(const CentralityScores& scores, std::size_t k) {
  if (k == 0) throw InvalidArgumentError("top_k: k must be at least 1");
  std::vector<RankedNode> result;
  for (NodeId id : ranking(scores.values(), k)) {
    result.push_back({scores.labels()[id], scores.values()[id]});
  }
  return result;
}

}  // namespace i2pr

#endif  // I2PR_CENTRALITY_HPP_
