#ifndef I2PR_SYNTHGEN_HPP_
#define I2PR_SYNTHGEN_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"
#include "i2pr/rng.hpp"

// Seeded synthetic digraph generators. Every structural choice is drawn
// with Rng::below from a per-purpose stream (Stream::kStructure for
// endpoints, Stream::kDirection for arc orientation), so a seed reproduces
// the same graph on any platform.

namespace i2pr {

struct UniformRandomSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

struct PreferentialAttachmentSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

struct BidirectedStarSpec {
  std::size_t n = 0;  // hub plus n - 1 leaves
};

struct DirectedConfigurationSpec {
  std::vector<std::size_t> in_degrees;
  std::vector<std::size_t> out_degrees;
  std::uint64_t seed = 0;
};

using GeneratorSpec =
    std::variant<UniformRandomSpec, PreferentialAttachmentSpec, BidirectedStarSpec, DirectedConfigurationSpec>;

// "v0".."v9" for n = 10, "v000".."v999" for n = 1000: zero padded so that
// lexicographic order equals numeric order.
inline std::vector<std::string> generated_labels(std::size_t n) {
  std::size_t width = 1;
  for (std::size_t x = n > 0 ? n - 1 : 0; x >= 10; x /= 10) ++width;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto digits = std::to_string(i);
    labels.push_back("v" + std::string(width - digits.size(), '0') + digits);
  }
  return labels;
}

namespace detail {

inline std::uint64_t max_edges(std::size_t n) {
  return n < 2 ? 0 : std::uint64_t{n} * (n - 1);
}

inline std::uint64_t edge_key(NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; }

// Uniform ordered pair (u, v), u != v.
inline Edge random_pair(Rng& rng, std::size_t n) {
  const auto u = static_cast<NodeId>(rng.below(n));
  auto v = static_cast<NodeId>(rng.below(n - 1));
  if (v >= u) ++v;
  return {u, v};
}

// Binary indexed tree over integer weights, for proportional sampling.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i, std::uint64_t delta) {
    total_ += delta;
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  std::uint64_t total() const noexcept { return total_; }

  // Smallest index whose prefix sum exceeds `target` (target < total()).
  std::size_t find(std::uint64_t target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::uint64_t total_ = 0;
};

inline DirectedGraph uniform_random(const UniformRandomSpec& spec) {
  const auto cap = max_edges(spec.n);
  if (spec.m > cap) throw InfeasibleSpecError("uniform-random: m exceeds n(n-1)");
  Rng rng = Rng::stream(spec.seed, Stream::kStructure);
  // Dense requests sample the missing arcs instead.
  const bool complement = spec.m > cap / 2;
  const std::uint64_t draws = complement ? cap - spec.m : spec.m;
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draws * 2);
  const std::uint64_t attempt_cap = 64 * draws + 1024;
  std::uint64_t attempts = 0;
  while (chosen.size() < draws) {
    if (++attempts > attempt_cap) throw InfeasibleSpecError("uniform-random: resampling exhausted");
    const auto [u, v] = random_pair(rng, spec.n);
    chosen.insert(edge_key(u, v));
  }
  std::vector<Edge> edges;
  edges.reserve(spec.m);
  if (complement) {
    for (NodeId u = 0; u < spec.n; ++u) {
      for (NodeId v = 0; v < spec.n; ++v) {
        if (u != v && !chosen.contains(edge_key(u, v))) edges.emplace_back(u, v);
      }
    }
  } else {
    for (auto key : chosen) edges.emplace_back(static_cast<NodeId>(key >> 32), static_cast<NodeId>(key));
  }
  return DirectedGraph(generated_labels(spec.n), edges);
}

// Node t (t >= 1) arrives and places quota[t] arcs to earlier nodes; the
// partner is drawn with probability proportional to (total degree + 1) and
// the orientation by a fair coin.
inline DirectedGraph preferential_attachment(const PreferentialAttachmentSpec& spec) {
  const auto n = spec.n;
  if (spec.m > max_edges(n)) throw InfeasibleSpecError("preferential-attachment: m exceeds n(n-1)");
  std::vector<std::uint64_t> quota(n, 0);
  if (spec.m > 0) {
    // even split, remainder to the latest arrivals, capped at 2t
    const std::uint64_t base = spec.m / (n - 1), extra = spec.m % (n - 1);
    std::uint64_t spill = 0;
    for (std::size_t t = 1; t < n; ++t) {
      const std::uint64_t want = base + (t >= n - extra ? 1 : 0);
      quota[t] = std::min<std::uint64_t>(want, 2 * t);
      spill += want - quota[t];
    }
    for (std::size_t t = n - 1; spill > 0 && t >= 1; --t) {
      const auto room = std::min<std::uint64_t>(2 * t - quota[t], spill);
      quota[t] += room;
      spill -= room;
    }
  }

  Rng structure = Rng::stream(spec.seed, Stream::kStructure);
  Rng direction = Rng::stream(spec.seed, Stream::kDirection);
  Fenwick weights(n);
  std::vector<std::uint64_t> degree(n, 0);
  std::unordered_set<std::uint64_t> present;
  present.reserve(spec.m * 2);
  std::vector<Edge> edges;
  edges.reserve(spec.m);
  if (n > 0) weights.add(0, 1);
  for (std::size_t t = 1; t < n; ++t) {
    const auto newcomer = static_cast<NodeId>(t);
    const std::uint64_t attempt_cap = 64 * quota[t] + 1024;
    std::uint64_t placed = 0, attempts = 0;
    while (placed < quota[t]) {
      if (++attempts > attempt_cap) throw InfeasibleSpecError("preferential-attachment: resampling exhausted");
      const auto partner = static_cast<NodeId>(weights.find(structure.below(weights.total())));
      const Edge e = direction.coin() ? Edge{newcomer, partner} : Edge{partner, newcomer};
      if (!present.insert(edge_key(e.first, e.second)).second) continue;
      edges.push_back(e);
      ++degree[t];
      ++degree[partner];
      weights.add(partner, 1);
      ++placed;
    }
    weights.add(t, degree[t] + 1);
  }
  return DirectedGraph(generated_labels(n), edges);
}

inline DirectedGraph bidirected_star(const BidirectedStarSpec& spec) {
  std::vector<Edge> edges;
  for (NodeId leaf = 1; leaf < spec.n; ++leaf) {
    edges.emplace_back(0, leaf);
    edges.emplace_back(leaf, 0);
  }
  return DirectedGraph(generated_labels(spec.n), edges);
}

// Kleitman-Wang: lay off each node's out-degree onto the nodes with the
// largest remaining (in, out) demand. Succeeds iff the pair sequence is
// digraphical.
inline std::vector<Edge> kleitman_wang(std::vector<std::size_t> in, std::vector<std::size_t> out) {
  const auto n = in.size();
  std::vector<Edge> edges;
  std::vector<NodeId> candidates;
  for (NodeId u = 0; u < n; ++u) {
    if (out[u] == 0) continue;
    candidates.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (v != u && in[v] > 0) candidates.push_back(v);
    }
    if (candidates.size() < out[u]) throw InfeasibleSpecError("degree sequence is not digraphical");
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(out[u]),
                      candidates.end(), [&](NodeId a, NodeId b) {
                        if (in[a] != in[b]) return in[a] > in[b];
                        if (out[a] != out[b]) return out[a] > out[b];
                        return a < b;
                      });
    for (std::size_t i = 0; i < out[u]; ++i) {
      edges.emplace_back(u, candidates[i]);
      --in[candidates[i]];
    }
    out[u] = 0;
  }
  return edges;
}

// Realizes the sequence with Kleitman-Wang, then randomizes with
// degree-preserving double-edge swaps (a->b, c->d) => (a->d, c->b).
inline DirectedGraph directed_configuration(const DirectedConfigurationSpec& spec) {
  const auto n = spec.in_degrees.size();
  if (spec.out_degrees.size() != n) {
    throw InfeasibleSpecError("directed-configuration: in/out sequences differ in length");
  }
  const auto sum_in = std::accumulate(spec.in_degrees.begin(), spec.in_degrees.end(), std::size_t{0});
  const auto sum_out = std::accumulate(spec.out_degrees.begin(), spec.out_degrees.end(), std::size_t{0});
  if (sum_in != sum_out) throw InfeasibleSpecError("directed-configuration: in and out sums differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.in_degrees[i] >= n || spec.out_degrees[i] >= n) {
      throw InfeasibleSpecError("degree sequence is not digraphical");
    }
  }
  auto edges = kleitman_wang(spec.in_degrees, spec.out_degrees);

  Rng rng = Rng::stream(spec.seed, Stream::kStructure);
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) present.insert(edge_key(u, v));
  const std::size_t swaps = edges.size() < 2 ? 0 : 10 * edges.size();
  for (std::size_t s = 0; s < swaps; ++s) {
    const auto i = rng.below(edges.size());
    const auto j = rng.below(edges.size());
    if (i == j) continue;
    const auto [a, b] = edges[i];
    const auto [c, d] = edges[j];
    if (a == d || c == b || a == c || b == d) continue;
    if (present.contains(edge_key(a, d)) || present.contains(edge_key(c, b))) continue;
    present.erase(edge_key(a, b));
    present.erase(edge_key(c, d));
    present.insert(edge_key(a, d));
    present.insert(edge_key(c, b));
    edges[i] = {a, d};
    edges[j] = {c, b};
  }
  return DirectedGraph(generated_labels(n), edges);
}

}  // namespace detail

inline DirectedGraph generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> DirectedGraph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformRandomSpec>) return detail::uniform_random(s);
        else if constexpr (std::is_same_v<T, PreferentialAttachmentSpec>) return detail::preferential_attachment(s);
        else if constexpr (std::is_same_v<T, BidirectedStarSpec>) return detail::bidirected_star(s);
        else return detail::directed_configuration(s);
      },
      spec);
}

}  // namespace i2pr

#endif  // I2PR_SYNTHGEN_HPP_
