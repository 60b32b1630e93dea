#ifndef I2PR_REPORT_HPP_
#define I2PR_REPORT_HPP_

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "i2pr/centrality.hpp"
#include "i2pr/community.hpp"
#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"
#include "i2pr/ingest.hpp"
#include "i2pr/metrics.hpp"
#include "i2pr/percolation.hpp"

namespace i2pr {

using ordered_json = nlohmann::ordered_json;

// %.*g text of x.
inline std::string format_sig(double x, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// x rounded to `digits` significant digits. nlohmann prints the shortest
// round-trip form, so this value serializes with at most `digits` digits.
inline double round_sig(double x, int digits = 9) { return std::strtod(format_sig(x, digits).c_str(), nullptr); }

// ---------------------------------------------------------------------------
// MetricsSnapshot

/// Fixed field order; metrics that were not requested are omitted, and an
/// undefined APL is written as null.
inline ordered_json to_json(const MetricsSnapshot& s) {
  ordered_json j;
  j["n"] = s.n;
  j["m"] = s.m;
  auto real = [](const std::optional<double>& v) -> ordered_json {
    return v ? ordered_json(round_sig(*v)) : ordered_json(nullptr);
  };
  if (s.requested.has(MetricSet::kDensity)) j["density"] = real(s.density);
  if (s.requested.has(MetricSet::kApl)) j["apl"] = real(s.apl);
  if (s.requested.has(MetricSet::kTransitivity)) j["transitivity"] = real(s.transitivity);
  if (s.requested.has(MetricSet::kCentralization)) j["centralization_total"] = real(s.centralization_total);
  if (s.requested.has(MetricSet::kComponents)) {
    j["largest_wcc"] = s.largest_wcc ? ordered_json(*s.largest_wcc) : ordered_json(nullptr);
    j["largest_scc"] = s.largest_scc ? ordered_json(*s.largest_scc) : ordered_json(nullptr);
  }
  return j;
}

inline MetricsSnapshot snapshot_from_json(const nlohmann::json& j) {
  MetricsSnapshot s;
  try {
    s.n = j.at("n").get<std::size_t>();
    s.m = j.at("m").get<std::size_t>();
    unsigned bits = 0;
    auto real = [&](const char* key, MetricSet::Bit bit, std::optional<double>& slot) {
      if (!j.contains(key)) return;
      bits |= bit;
      if (!j[key].is_null()) slot = j[key].get<double>();
    };
    real("density", MetricSet::kDensity, s.density);
    real("apl", MetricSet::kApl, s.apl);
    real("transitivity", MetricSet::kTransitivity, s.transitivity);
    real("centralization_total", MetricSet::kCentralization, s.centralization_total);
    if (j.contains("largest_wcc")) {
      bits |= MetricSet::kComponents;
      if (!j["largest_wcc"].is_null()) s.largest_wcc = j["largest_wcc"].get<std::size_t>();
      if (!j["largest_scc"].is_null()) s.largest_scc = j["largest_scc"].get<std::size_t>();
    }
    s.requested = MetricSet(bits);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("snapshot JSON: ") + e.what());
  }
  return s;
}

// Human-readable, 7 significant digits.
inline std::string format_snapshot_text(const MetricsSnapshot& s) {
  std::ostringstream out;
  out << "nodes          " << s.n << "\n"
      << "edges          " << s.m << "\n";
  auto line = [&](const char* name, MetricSet::Bit bit, const std::optional<double>& v) {
    if (!s.requested.has(bit)) return;
    out << name << (v ? format_sig(*v, 7) : std::string("NA")) << "\n";
  };
  line("density        ", MetricSet::kDensity, s.density);
  line("avg path len   ", MetricSet::kApl, s.apl);
  line("transitivity   ", MetricSet::kTransitivity, s.transitivity);
  line("centralization ", MetricSet::kCentralization, s.centralization_total);
  if (s.requested.has(MetricSet::kComponents) && s.largest_wcc) {
    out << "largest wcc    " << *s.largest_wcc << "\n"
        << "largest scc    " << *s.largest_scc << "\n";
  }
  return out.str();
}

inline ordered_json to_json(const CleaningReport& r) {
  ordered_json j;
  j["rows_read"] = r.rows_read;
  j["rows_dropped_missing"] = r.rows_dropped_missing;
  j["rows_dropped_cascade"] = r.rows_dropped_cascade;
  j["duplicate_edges_collapsed"] = r.duplicate_edges_collapsed;
  j["self_loops_dropped"] = r.self_loops_dropped;
  j["rows_kept"] = r.rows_kept();
  return j;
}

// ---------------------------------------------------------------------------
// Percolation traces

enum class TraceFormat { kCsv, kJson };

inline ordered_json to_json(const PercolationTrace& trace) {
  ordered_json j;
  j["strategy"] = {{"kind", std::string(to_string(trace.strategy.kind))},
                   {"measure", std::string(to_string(trace.strategy.measure))},
                   {"seed", trace.strategy.seed ? ordered_json(*trace.strategy.seed) : ordered_json(nullptr)}};
  j["metrics"] = trace.metrics.names();
  j["steps"] = ordered_json::array();
  for (const auto& step : trace.steps) {
    ordered_json row;
    row["step"] = step.step;
    row["removed"] = step.removed ? ordered_json(*step.removed) : ordered_json(nullptr);
    row["removed_degree"] = step.removed_degree;
    row["snapshot"] = to_json(step.snapshot);
    j["steps"].push_back(std::move(row));
  }
  return j;
}

inline PercolationTrace trace_from_json(const nlohmann::json& j) {
  PercolationTrace trace;
  try {
    const auto& s = j.at("strategy");
    trace.strategy.kind = parse_attack_kind(s.at("kind").get<std::string>());
    trace.strategy.measure = parse_measure(s.at("measure").get<std::string>());
    if (!s.at("seed").is_null()) trace.strategy.seed = s["seed"].get<std::uint64_t>();
    std::string names;
    for (const auto& name : j.at("metrics")) names += name.get<std::string>() + ",";
    trace.metrics = MetricSet::parse(names);
    for (const auto& row : j.at("steps")) {
      TraceStep step;
      step.step = row.at("step").get<std::size_t>();
      if (!row.at("removed").is_null()) step.removed = row["removed"].get<std::string>();
      step.removed_degree = row.at("removed_degree").get<std::size_t>();
      step.snapshot = snapshot_from_json(row.at("snapshot"));
      trace.steps.push_back(std::move(step));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trace JSON: ") + e.what());
  }
  return trace;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// One row per step: step, removed, removed_degree, n, m, density, apl.
/// Undefined or unrequested values are empty cells.
inline std::string emit_trace_series(const PercolationTrace& trace, TraceFormat format) {
  if (format == TraceFormat::kJson) return to_json(trace).dump(2) + "\n";
  std::string out = "step,removed,removed_degree,n,m,density,apl\n";
  for (const auto& step : trace.steps) {
    const auto& s = step.snapshot;
    out += std::to_string(step.step) + ",";
    out += (step.removed ? detail::csv_field(*step.removed) : std::string()) + ",";
    out += std::to_string(step.removed_degree) + "," + std::to_string(s.n) + "," + std::to_string(s.m) + ",";
    out += (s.density ? format_sig(*s.density) : std::string()) + ",";
    out += (s.apl ? format_sig(*s.apl) : std::string()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Communities

inline ordered_json to_json(const CommunityPartition& p, std::size_t min_size) {
  ordered_json j;
  j["seed"] = p.seed;
  j["resolution"] = p.resolution;
  j["community_count"] = p.community_count;
  j["modularity"] = round_sig(p.modularity);
  j["communities"] = ordered_json::array();
  for (const auto& c : filter_communities(p, min_size)) {
    j["communities"].push_back({{"id", c.id}, {"size", c.size()}, {"members", c.members}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// Degree tables and country aggregation

/// Label -> country code, read from a CSV with columns `label,country`.
class CountryMapping {
 public:
  CountryMapping() = default;
  explicit CountryMapping(std::map<std::string, std::string> by_label) : by_label_(std::move(by_label)) {}

  static CountryMapping read_csv(std::istream& in) {
    std::vector<std::string> fields;
    std::size_t line_no = 0;
    if (!detail::read_csv_row(in, fields, line_no)) throw ParseError("country mapping: missing header");
    if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);
    std::optional<std::size_t> label_col, country_col;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (trim(fields[i]) == "label") label_col = i;
      if (trim(fields[i]) == "country") country_col = i;
    }
    if (!label_col || !country_col) throw ParseError("country mapping: header must have 'label' and 'country'");
    std::map<std::string, std::string> by_label;
    while (detail::read_csv_row(in, fields, line_no)) {
      if (fields.size() == 1 && trim(fields[0]).empty()) continue;
      if (fields.size() <= std::max(*label_col, *country_col)) {
        throw ParseError("country mapping: short row at line " + std::to_string(line_no));
      }
      const std::string label(trim(fields[*label_col]));
      const std::string country(trim(fields[*country_col]));
      if (label.empty()) throw ParseError("country mapping: empty label at line " + std::to_string(line_no));
      if (!by_label.emplace(label, country.empty() ? "UNKNOWN" : country).second) {
        throw ParseError("country mapping: duplicate label '" + label + "'");
      }
    }
    return CountryMapping(std::move(by_label));
  }

  const std::string& country_of(const std::string& label) const {
    static const std::string unknown = "UNKNOWN";
    auto it = by_label_.find(label);
    return it == by_label_.end() ? unknown : it->second;
  }

 private:
  std::map<std::string, std::string> by_label_;
};

struct CountryDegree {
  std::string country;
  std::uint64_t total_degree = 0;

  friend bool operator==(const CountryDegree&, const CountryDegree&) = default;
};

/// Sum of total degree of the global top-k nodes, grouped by country,
/// largest first (ties by country code).
inline std::vector<CountryDegree> degree_by_country(const DirectedGraph& g, const CountryMapping& mapping,
                                                    std::size_t k) {
  if (k == 0) throw InvalidArgumentError("degree_by_country: k must be at least 1");
  std::map<std::string, std::uint64_t> sums;
  for (const auto& node : top_k(centrality_scores(g, Measure::kTotalDegree), k)) {
    sums[mapping.country_of(node.label)] += static_cast<std::uint64_t>(node.score);
  }
  std::vector<CountryDegree> rows;
  for (const auto& [country, sum] : sums) rows.push_back({country, sum});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CountryDegree& a, const CountryDegree& b) { return a.total_degree > b.total_degree; });
  return rows;
}

/// Top-k tables for in, out and total degree, each ranked independently.
inline ordered_json degree_table_json(const DirectedGraph& g, std::size_t k) {
  ordered_json j;
  auto ranked = [&](Measure m) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : top_k(centrality_scores(g, m), k)) {
      rows.push_back({{"label", r.label}, {"degree", static_cast<std::uint64_t>(r.score)}});
    }
    return rows;
  };
  j["top_in"] = ranked(Measure::kInDegree);
  j["top_out"] = ranked(Measure::kOutDegree);
  j["top_total"] = ranked(Measure::kTotalDegree);
  return j;
}

}  // namespace i2pr

#endif  // I2PR_REPORT_HPP_
