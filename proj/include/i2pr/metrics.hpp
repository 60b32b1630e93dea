#ifndef I2PR_METRICS_HPP_
#define I2PR_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"

namespace i2pr {

inline double density(const DirectedGraph& g) {
  const auto n = g.node_count();
  if (n < 2) throw DegenerateGraphError("density needs at least 2 nodes");
  return static_cast<double>(g.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

// Sum of directed shortest-path hop counts over reachable ordered pairs
// (u != v), and the number of such pairs. Integer, so exact.
struct PathLengthTotals {
  std::uint64_t total_hops = 0;
  std::uint64_t reachable_pairs = 0;

  std::optional<double> mean() const noexcept {
    if (reachable_pairs == 0) return std::nullopt;
    return static_cast<double>(total_hops) / static_cast<double>(reachable_pairs);
  }

  friend bool operator==(const PathLengthTotals&, const PathLengthTotals&) = default;
};

namespace detail {

inline PathLengthTotals bfs_totals(const DirectedGraph& g, NodeId first, NodeId last) {
  PathLengthTotals totals;
  const auto n = g.node_count();
  std::vector<std::int32_t> dist(n, -1);
  std::vector<NodeId> queue(n);
  for (NodeId s = first; s < last; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::size_t head = 0, tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      const NodeId u = queue[head++];
      const auto next = dist[u] + 1;
      for (NodeId v : g.out_neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = next;
          queue[tail++] = v;
          totals.total_hops += static_cast<std::uint64_t>(next);
        }
      }
    }
    totals.reachable_pairs += tail - 1;
  }
  return totals;
}

}  // namespace detail

/// BFS from every node. Sources are split into contiguous blocks across
/// `workers` threads (0 = hardware concurrency); block totals are integers
/// summed in block order, so the result does not depend on the worker count.
inline PathLengthTotals path_length_totals(const DirectedGraph& g, unsigned workers = 0) {
  const auto n = static_cast<NodeId>(g.node_count());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<NodeId>(n / 64, 1));
  if (workers <= 1) return detail::bfs_totals(g, 0, n);

  std::vector<PathLengthTotals> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const auto first = static_cast<NodeId>(std::uint64_t{n} * w / workers);
      const auto last = static_cast<NodeId>(std::uint64_t{n} * (w + 1) / workers);
      pool.emplace_back([&g, &partial, w, first, last] { partial[w] = detail::bfs_totals(g, first, last); });
    }
  }
  PathLengthTotals totals;
  for (const auto& p : partial) {
    totals.total_hops += p.total_hops;
    totals.reachable_pairs += p.reachable_pairs;
  }
  return totals;
}

/// Mean hop count over reachable ordered pairs; unreachable pairs are
/// left out rather than counted as infinite.
inline double average_path_length(const DirectedGraph& g, unsigned workers = 0) {
  if (auto mean = path_length_totals(g, workers).mean()) return *mean;
  throw NoPathsError("average path length undefined: no reachable ordered pair");
}

// Counts on the undirected skeleton.
struct TriadCounts {
  std::uint64_t triangles = 0;
  std::uint64_t connected_triples = 0;  // paths of length 2, by centre

  double transitivity() const noexcept {
    if (connected_triples == 0) return 0.0;
    return 3.0 * static_cast<double>(triangles) / static_cast<double>(connected_triples);
  }
};

inline TriadCounts triad_counts(const DirectedGraph& g) {
  const auto adj = g.undirected_adjacency();
  TriadCounts counts;
  std::vector<char> mark(adj.size(), 0);
  for (NodeId u = 0; u < adj.size(); ++u) {
    const std::uint64_t d = adj[u].size();
    counts.connected_triples += d * (d - (d > 0 ? 1 : 0)) / 2;
    for (NodeId w : adj[u]) mark[w] = 1;
    // each triangle u < v < w counted once, from its smallest vertex
    for (NodeId v : adj[u]) {
      if (v <= u) continue;
      for (NodeId w : adj[v]) {
        if (w > v && mark[w]) ++counts.triangles;
      }
    }
    for (NodeId w : adj[u]) mark[w] = 0;
  }
  return counts;
}

inline double transitivity(const DirectedGraph& g) {
  if (g.node_count() < 3) throw DegenerateGraphError("transitivity needs at least 3 nodes");
  return triad_counts(g).transitivity();
}

enum class DegreeMode { kIn, kOut, kTotal };

inline std::size_t degree_of(const DirectedGraph& g, NodeId u, DegreeMode mode) {
  switch (mode) {
    case DegreeMode::kIn: return g.in_degree(u);
    case DegreeMode::kOut: return g.out_degree(u);
    case DegreeMode::kTotal: break;
  }
  return g.degree(u);
}

/// Freeman degree centralization: sum_i (d_max - d_i) / T with
/// T = 2(n-1)^2 for total degree and (n-1)^2 for in or out degree, the
/// largest value the sum can take on a simple loop-free digraph.
inline double degree_centralization(const DirectedGraph& g, DegreeMode mode = DegreeMode::kTotal) {
  const auto n = g.node_count();
  if (n < 3) throw DegenerateGraphError("degree centralization needs at least 3 nodes");
  std::uint64_t max_degree = 0, sum = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::uint64_t d = degree_of(g, u, mode);
    max_degree = std::max(max_degree, d);
    sum += d;
  }
  const std::uint64_t numerator = max_degree * n - sum;
  const double bound = static_cast<double>(n - 1) * static_cast<double>(n - 1) *
                       (mode == DegreeMode::kTotal ? 2.0 : 1.0);
  return static_cast<double>(numerator) / bound;
}

struct ComponentSummary {
  std::size_t largest_wcc = 0;
  std::size_t largest_scc = 0;
  std::size_t wcc_count = 0;
  std::size_t scc_count = 0;

  friend bool operator==(const ComponentSummary&, const ComponentSummary&) = default;
};

namespace detail {

inline std::vector<std::size_t> weak_component_sizes(const DirectedGraph& g) {
  const auto n = g.node_count();
  std::vector<NodeId> parent(n);
  for (NodeId i = 0; i < n; ++i) parent[i] = i;
  auto root = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : g.edges()) {
    const auto a = root(u), b = root(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> size(n, 0);
  for (NodeId i = 0; i < n; ++i) ++size[root(i)];
  std::erase(size, 0);
  return size;
}

// Iterative Tarjan.
inline std::vector<std::size_t> strong_component_sizes(const DirectedGraph& g) {
  const auto n = g.node_count();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> frames;
  std::vector<std::size_t> sizes;
  std::uint32_t counter = 0;

  for (NodeId start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    frames.emplace_back(start, 0);
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      auto& [u, next] = frames.back();
      const auto succ = g.out_neighbors(u);
      if (next < succ.size()) {
        const NodeId v = succ[next++];
        if (index[v] == kUnvisited) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
          frames.emplace_back(v, 0);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const NodeId done = u;
      frames.pop_back();
      if (!frames.empty()) {
        const NodeId up = frames.back().first;
        low[up] = std::min(low[up], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t size = 0;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          ++size;
        } while (w != done);
        sizes.push_back(size);
      }
    }
  }
  return sizes;
}

}  // namespace detail

inline ComponentSummary component_summary(const DirectedGraph& g) {
  if (g.empty()) throw DegenerateGraphError("component summary needs at least 1 node");
  const auto weak = detail::weak_component_sizes(g);
  const auto strong = detail::strong_component_sizes(g);
  return ComponentSummary{*std::max_element(weak.begin(), weak.end()),
                          *std::max_element(strong.begin(), strong.end()), weak.size(),
                          strong.size()};
}

// ---------------------------------------------------------------------------
// Snapshots

/// Bit set of whole-graph metrics to compute.
class MetricSet {
 public:
  enum Bit : unsigned {
    kDensity = 1u << 0,
    kApl = 1u << 1,
    kTransitivity = 1u << 2,
    kCentralization = 1u << 3,
    kComponents = 1u << 4,
  };
  static constexpr unsigned kAllBits = 0x1F;

  constexpr MetricSet() = default;
  constexpr explicit MetricSet(unsigned bits) : bits_(bits & kAllBits) {}
  static constexpr MetricSet all() { return MetricSet(kAllBits); }

  constexpr bool has(Bit b) const noexcept { return (bits_ & b) != 0; }
  constexpr unsigned bits() const noexcept { return bits_; }
  constexpr MetricSet operator|(Bit b) const noexcept { return MetricSet(bits_ | b); }

  // Comma list of: density, apl, transitivity, centralization, components, all.
  static MetricSet parse(std::string_view list) {
    MetricSet set;
    while (!list.empty()) {
      const auto comma = list.find(',');
      const auto token = trim(list.substr(0, comma));
      list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      if (token.empty()) continue;
      if (token == "all") set.bits_ = kAllBits;
      else if (auto bit = bit_named(token)) set.bits_ |= *bit;
      else throw InvalidArgumentError("unknown metric '" + std::string(token) + "'");
    }
    return set;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [bit, name] : kNames) {
      if (has(bit)) out.emplace_back(name);
    }
    return out;
  }

  // Smallest node count for which every metric in the set is defined.
  std::size_t min_nodes() const noexcept {
    if (has(kTransitivity) || has(kCentralization)) return 3;
    if (has(kDensity)) return 2;
    return 1;
  }

  friend bool operator==(MetricSet, MetricSet) = default;

 private:
  static constexpr std::pair<Bit, std::string_view> kNames[] = {
      {kDensity, "density"},
      {kApl, "apl"},
      {kTransitivity, "transitivity"},
      {kCentralization, "centralization"},
      {kComponents, "components"},
  };

  static std::optional<Bit> bit_named(std::string_view name) {
    for (const auto& [bit, n] : kNames) {
      if (n == name) return bit;
    }
    return std::nullopt;
  }

  unsigned bits_ = 0;
};

struct MetricsSnapshot {
  std::size_t n = 0;
  std::size_t m = 0;
  MetricSet requested;
  std::optional<double> density;
  std::optional<double> apl;  // empty if requested but no pair is reachable
  std::optional<double> transitivity;
  std::optional<double> centralization_total;
  std::optional<std::size_t> largest_wcc;
  std::optional<std::size_t> largest_scc;

  friend bool operator==(const MetricsSnapshot&, const MetricsSnapshot&) = default;
};

inline MetricsSnapshot snapshot(const DirectedGraph& g, MetricSet requested = MetricSet::all(),
                                unsigned workers = 0) {
  MetricsSnapshot s;
  s.n = g.node_count();
  s.m = g.edge_count();
  s.requested = requested;
  if (requested.has(MetricSet::kDensity)) s.density = density(g);
  if (requested.has(MetricSet::kApl)) s.apl = path_length_totals(g, workers).mean();
  if (requested.has(MetricSet::kTransitivity)) s.transitivity = transitivity(g);
  if (requested.has(MetricSet::kCentralization)) {
    s.centralization_total = degree_centralization(g, DegreeMode::kTotal);
  }
  if (requested.has(MetricSet::kComponents)) {
    const auto c = component_summary(g);
    s.largest_wcc = c.largest_wcc;
    s.largest_scc = c.largest_scc;
  }
  return s;
}

}  // namespace i2pr

#endif  // I2PR_METRICS_HPP_
