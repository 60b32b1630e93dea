#ifndef I2PR_PERCOLATION_HPP_
#define I2PR_PERCOLATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "i2pr/centrality.hpp"
#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"
#include "i2pr/metrics.hpp"
#include "i2pr/rng.hpp"

namespace i2pr {

enum class AttackKind {
  kAdaptive,  // recompute the measure after every removal
  kStatic,    // remove a ranking fixed on the initial graph
  kRandom,    // uniform failure, without replacement
};

inline std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::kAdaptive: return "adaptive-degree";
    case AttackKind::kStatic: return "static-degree";
    case AttackKind::kRandom: return "random";
  }
  return "?";
}

inline AttackKind parse_attack_kind(std::string_view name) {
  if (name == "adaptive-degree" || name == "adaptive") return AttackKind::kAdaptive;
  if (name == "static-degree" || name == "static") return AttackKind::kStatic;
  if (name == "random") return AttackKind::kRandom;
  throw InvalidArgumentError("unknown attack strategy '" + std::string(name) + "'");
}

struct AttackStrategy {
  AttackKind kind = AttackKind::kAdaptive;
  Measure measure = Measure::kTotalDegree;
  std::optional<std::uint64_t> seed;  // random kind only

  friend bool operator==(const AttackStrategy&, const AttackStrategy&) = default;
};

struct TraceStep {
  std::size_t step = 0;
  std::optional<std::string> removed;  // empty for the baseline
  std::size_t removed_degree = 0;      // total degree at removal time
  MetricsSnapshot snapshot;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct PercolationTrace {
  AttackStrategy strategy;
  MetricSet metrics;
  std::vector<TraceStep> steps;  // steps[0] is the pre-attack baseline

  friend bool operator==(const PercolationTrace&, const PercolationTrace&) = default;
};

/// The top-k ranking computed once on the initial graph.
inline std::vector<std::string> static_target_list(const DirectedGraph& g, Measure measure,
                                                   std::size_t k) {
  if (k > g.node_count()) throw InvalidArgumentError("static_target_list: k exceeds node count");
  std::vector<std::string> targets;
  if (k == 0) return targets;
  for (NodeId id : ranking(centrality_values(g, measure), k)) targets.push_back(g.label(id));
  return targets;
}

struct AttackOptions {
  unsigned workers = 0;  // forwarded to the APL sweep
  EigenvectorOptions eigen;
};

/// Removes `steps` nodes one at a time and records a snapshot of the
/// requested metrics before the first removal and after every removal.
inline PercolationTrace run_attack(const DirectedGraph& g, const AttackStrategy& strategy,
                                   std::size_t steps, MetricSet metrics = MetricSet::all(),
                                   const AttackOptions& options = {}) {
  if (g.empty()) throw DegenerateGraphError("run_attack on an empty graph");
  if (steps >= g.node_count()) throw InvalidArgumentError("run_attack: steps must be below node count");
  if (g.node_count() - steps < metrics.min_nodes()) {
    throw InvalidArgumentError("run_attack: requested metrics undefined after " +
                               std::to_string(steps) + " removals");
  }
  if (strategy.kind == AttackKind::kRandom && !strategy.seed) {
    throw InvalidArgumentError("run_attack: random strategy requires a seed");
  }

  PercolationTrace trace{strategy, metrics, {}};
  trace.steps.push_back({0, std::nullopt, 0, snapshot(g, metrics, options.workers)});

  std::vector<std::string> planned;
  if (strategy.kind == AttackKind::kStatic) planned = static_target_list(g, strategy.measure, steps);
  std::optional<Rng> rng;
  if (strategy.kind == AttackKind::kRandom) rng = Rng::stream(*strategy.seed, Stream::kAttack);

  DirectedGraph current = g;
  for (std::size_t t = 1; t <= steps; ++t) {
    NodeId target = 0;
    switch (strategy.kind) {
      case AttackKind::kAdaptive:
        target = ranking(centrality_values(current, strategy.measure, options.eigen), 1).front();
        break;
      case AttackKind::kStatic: target = current.id_of(planned[t - 1]); break;
      case AttackKind::kRandom:
        target = static_cast<NodeId>(rng->below(current.node_count()));
        break;
    }
    std::string label = current.label(target);
    auto removal = current.remove_node(label);
    current = std::move(removal.graph);
    trace.steps.push_back({t, std::move(label), removal.removed_in + removal.removed_out,
                           snapshot(current, metrics, options.workers)});
  }
  return trace;
}

// Density after removing nodes of the given total degrees one by one:
// (m - sum of removed degrees) / ((n - t)(n - t - 1)).
inline double density_from_counts(std::uint64_t n, std::uint64_t m) {
  if (n < 2) throw DegenerateGraphError("density needs at least 2 nodes");
  return static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline std::vector<double> closed_form_densities(std::uint64_t n, std::uint64_t m,
                                                 std::span<const std::uint64_t> removed_degrees) {
  std::vector<double> out{density_from_counts(n, m)};
  for (auto d : removed_degrees) {
    if (d > m) throw InvalidArgumentError("removed degree exceeds remaining edge count");
    m -= d;
    out.push_back(density_from_counts(--n, m));
  }
  return out;
}

struct TraceDelta {
  std::size_t step = 0;
  std::optional<double> density;  // a - b; empty unless both sides have it
  std::optional<double> apl;
};

struct TraceComparison {
  std::vector<TraceDelta> rows;
  double max_abs_density = 0.0;
  double max_abs_apl = 0.0;
};

inline TraceComparison compare_traces(const PercolationTrace& a, const PercolationTrace& b) {
  if (a.steps.size() != b.steps.size()) {
    throw InvalidArgumentError("compare_traces: traces have different lengths");
  }
  TraceComparison cmp;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto& sa = a.steps[i].snapshot;
    const auto& sb = b.steps[i].snapshot;
    TraceDelta row{a.steps[i].step, std::nullopt, std::nullopt};
    if (sa.density && sb.density) {
      row.density = *sa.density - *sb.density;
      cmp.max_abs_density = std::max(cmp.max_abs_density, std::abs(*row.density));
    }
    if (sa.apl && sb.apl) {
      row.apl = *sa.apl - *sb.apl;
      cmp.max_abs_apl = std::max(cmp.max_abs_apl, std::abs(*row.apl));
    }
    cmp.rows.push_back(row);
  }
  return cmp;
}

}  // namespace i2pr

#endif  // I2PR_PERCOLATION_HPP_
