#ifndef I2PR_COMMUNITY_HPP_
#define I2PR_COMMUNITY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"
#include "i2pr/rng.hpp"

namespace i2pr {

using CommunityId = std::uint32_t;

/// Newman modularity on the undirected skeleton (reciprocal arcs merged into
/// one edge of weight 1): Q = sum_c (e_c - resolution * a_c^2).
/// `assignment` is indexed by node id.
inline double modularity(const DirectedGraph& g, std::span<const CommunityId> assignment,
                         double resolution = 1.0) {
  if (assignment.size() != g.node_count()) {
    throw InvalidArgumentError("modularity: assignment does not cover every node");
  }
  const auto adj = g.undirected_adjacency();
  std::uint64_t endpoint_total = 0;
  for (const auto& row : adj) endpoint_total += row.size();
  if (endpoint_total == 0) throw DegenerateGraphError("modularity needs at least 1 edge");

  std::unordered_map<CommunityId, std::pair<std::uint64_t, std::uint64_t>> mass;  // inside, endpoints
  for (NodeId u = 0; u < adj.size(); ++u) {
    auto& [inside, endpoints] = mass[assignment[u]];
    endpoints += adj[u].size();
    for (NodeId v : adj[u]) {
      if (assignment[v] == assignment[u]) ++inside;  // counted from both ends
    }
  }
  // sum in community order so the value is independent of hash iteration
  std::vector<std::pair<CommunityId, std::pair<std::uint64_t, std::uint64_t>>> ordered(mass.begin(), mass.end());
  std::sort(ordered.begin(), ordered.end());
  const double two_w = static_cast<double>(endpoint_total);
  double q = 0.0;
  for (const auto& [id, m] : ordered) {
    const double a = static_cast<double>(m.second) / two_w;
    q += static_cast<double>(m.first) / two_w - resolution * a * a;
  }
  return q;
}

/// Label-keyed variant. Throws InvalidArgumentError for uncovered nodes.
inline double modularity(const DirectedGraph& g, const std::map<std::string, CommunityId>& by_label,
                         double resolution = 1.0) {
  std::vector<CommunityId> assignment(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto it = by_label.find(g.label(u));
    if (it == by_label.end()) {
      throw InvalidArgumentError("modularity: node '" + g.label(u) + "' has no community");
    }
    assignment[u] = it->second;
  }
  return modularity(g, assignment, resolution);
}

struct CommunityPartition {
  std::vector<std::string> labels;       // node labels, sorted
  std::vector<CommunityId> assignment;   // parallel to labels; ids dense in [0, community_count)
  std::size_t community_count = 0;
  double modularity = 0.0;
  std::uint64_t seed = 0;
  double resolution = 1.0;
  // Q of the singleton start, then Q after every aggregation level.
  std::vector<double> level_modularity;
};

namespace detail {

// Undirected weighted graph used by the Louvain levels.
struct WeightedGraph {
  std::vector<std::vector<std::pair<NodeId, double>>> adj;  // no self entries
  std::vector<double> self_loop;                            // weight of {c, c}
  std::vector<double> strength;                             // k_i, self loop counted twice
  double two_w = 0.0;

  std::size_t size() const noexcept { return adj.size(); }

  void finish() {
    strength.assign(adj.size(), 0.0);
    two_w = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      double k = 2.0 * self_loop[i];
      for (const auto& [j, w] : adj[i]) k += w;
      strength[i] = k;
      two_w += k;
    }
  }
};

// Relabels `ids` densely by first appearance. Returns the community count.
inline std::size_t densify(std::vector<CommunityId>& ids) {
  std::unordered_map<CommunityId, CommunityId> remap;
  for (auto& id : ids) {
    auto [it, fresh] = remap.try_emplace(id, static_cast<CommunityId>(remap.size()));
    id = it->second;
  }
  return remap.size();
}

// One round of local moving. Returns true if any node changed community.
inline bool local_moves(const WeightedGraph& g, std::vector<CommunityId>& comm, double resolution,
                        Rng& rng) {
  const auto n = g.size();
  std::vector<double> total(n, 0.0);
  for (NodeId i = 0; i < n; ++i) total[comm[i]] += g.strength[i];

  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  shuffle(std::span<NodeId>(order), rng);

  std::vector<double> link(n, 0.0);
  std::vector<CommunityId> touched;
  bool any_move = false;
  for (;;) {
    bool moved = false;
    for (NodeId i : order) {
      const CommunityId home = comm[i];
      const double k_i = g.strength[i];
      touched.clear();
      touched.push_back(home);
      link[home] = 0.0;
      for (const auto& [j, w] : g.adj[i]) {
        const CommunityId c = comm[j];
        if (link[c] == 0.0 && c != home) touched.push_back(c);
        link[c] += w;
      }
      total[home] -= k_i;
      const double scale = resolution * k_i / g.two_w;
      CommunityId best = home;
      double best_gain = link[home] - scale * total[home];
      for (CommunityId c : touched) {
        const double gain = link[c] - scale * total[c];
        if (gain > best_gain + 1e-12) {
          best = c;
          best_gain = gain;
        }
      }
      total[best] += k_i;
      comm[i] = best;
      for (CommunityId c : touched) link[c] = 0.0;
      if (best != home) moved = true;
    }
    if (!moved) break;
    any_move = true;
  }
  return any_move;
}

inline WeightedGraph aggregate(const WeightedGraph& g, const std::vector<CommunityId>& comm,
                               std::size_t count) {
  WeightedGraph out;
  out.adj.resize(count);
  out.self_loop.assign(count, 0.0);
  std::vector<std::map<NodeId, double>> rows(count);
  for (NodeId i = 0; i < g.size(); ++i) {
    const auto ci = comm[i];
    out.self_loop[ci] += g.self_loop[i];
    for (const auto& [j, w] : g.adj[i]) {
      const auto cj = comm[j];
      if (ci == cj) {
        if (i < j) out.self_loop[ci] += w;
      } else {
        rows[ci][cj] += w;
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c) out.adj[c].assign(rows[c].begin(), rows[c].end());
  out.finish();
  return out;
}

}  // namespace detail

/// Two-phase Louvain on the undirected skeleton. Node visit order is
/// shuffled from `seed`, so a fixed (graph, seed, resolution) always yields
/// the same partition. Community ids are numbered by first appearance in
/// label order.
inline CommunityPartition louvain(const DirectedGraph& g, std::uint64_t seed, double resolution = 1.0) {
  if (g.edge_count() == 0) throw DegenerateGraphError("louvain needs at least 1 edge");
  if (!(resolution > 0.0)) throw InvalidArgumentError("louvain: resolution must be positive");

  detail::WeightedGraph level;
  {
    const auto skeleton = g.undirected_adjacency();
    level.adj.resize(skeleton.size());
    level.self_loop.assign(skeleton.size(), 0.0);
    for (NodeId u = 0; u < skeleton.size(); ++u) {
      for (NodeId v : skeleton[u]) level.adj[u].emplace_back(v, 1.0);
    }
    level.finish();
  }

  const auto n = g.node_count();
  std::vector<CommunityId> membership(n);
  for (NodeId u = 0; u < n; ++u) membership[u] = u;

  CommunityPartition result;
  result.seed = seed;
  result.resolution = resolution;
  result.level_modularity.push_back(modularity(g, membership, resolution));

  Rng rng = Rng::stream(seed, Stream::kShuffle);
  for (;;) {
    std::vector<CommunityId> comm(level.size());
    for (NodeId i = 0; i < comm.size(); ++i) comm[i] = i;
    if (!detail::local_moves(level, comm, resolution, rng)) break;
    const auto count = detail::densify(comm);
    for (auto& m : membership) m = comm[m];
    result.level_modularity.push_back(modularity(g, membership, resolution));
    if (count == level.size()) break;
    level = detail::aggregate(level, comm, count);
  }

  result.community_count = detail::densify(membership);
  result.labels.assign(g.labels().begin(), g.labels().end());
  result.assignment = std::move(membership);
  result.modularity = modularity(g, result.assignment, resolution);
  return result;
}

struct Community {
  CommunityId id = 0;
  std::vector<std::string> members;  // sorted

  std::size_t size() const noexcept { return members.size(); }
};

/// Communities with strictly more than `min_size` members, largest first
/// (ties by id).
inline std::vector<Community> filter_communities(const CommunityPartition& partition,
                                                 std::size_t min_size = 5) {
  std::vector<Community> all(partition.community_count);
  for (CommunityId c = 0; c < all.size(); ++c) all[c].id = c;
  for (std::size_t i = 0; i < partition.labels.size(); ++i) {
    all.at(partition.assignment[i]).members.push_back(partition.labels[i]);
  }
  std::erase_if(all, [&](const Community& c) { return c.size() <= min_size; });
  for (auto& c : all) std::sort(c.members.begin(), c.members.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const Community& a, const Community& b) { return a.size() > b.size(); });
  return all;
}

}  // namespace i2pr

#endif  // I2PR_COMMUNITY_HPP_
