#ifndef I2PR_INGEST_HPP_
#define I2PR_INGEST_HPP_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"

namespace i2pr {

// One raw row of the contact log. Missing endpoints are nullopt.
struct EdgeRecord {
  std::optional<std::string> src;
  std::optional<std::string> dst;
  std::optional<std::string> tunnel_id;

  bool anonymous() const noexcept { return !src || src->empty() || !dst || dst->empty(); }

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

enum class CleaningPolicy {
  kRowOnly,        // drop rows with a missing endpoint
  kTunnelCascade,  // ...and every row sharing a tunnel id with such a row
};

struct CleaningReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped_missing = 0;
  std::size_t rows_dropped_cascade = 0;
  std::size_t duplicate_edges_collapsed = 0;
  std::size_t self_loops_dropped = 0;

  // Rows that ended up as graph edges (after build_graph amended the report).
  std::size_t rows_kept() const noexcept {
    return rows_read - rows_dropped_missing - rows_dropped_cascade - duplicate_edges_collapsed -
           self_loops_dropped;
  }

  friend bool operator==(const CleaningReport&, const CleaningReport&) = default;
};

struct CleaningResult {
  std::vector<EdgeRecord> records;
  CleaningReport report;
};

inline CleaningResult clean_records(std::span<const EdgeRecord> records,
                                    CleaningPolicy policy = CleaningPolicy::kTunnelCascade) {
  CleaningResult result;
  result.report.rows_read = records.size();

  std::unordered_set<std::string> tainted;
  if (policy == CleaningPolicy::kTunnelCascade) {
    for (const auto& r : records) {
      if (r.anonymous() && r.tunnel_id && !r.tunnel_id->empty()) tainted.insert(*r.tunnel_id);
    }
  }
  for (const auto& r : records) {
    if (r.anonymous()) {
      ++result.report.rows_dropped_missing;
    } else if (r.tunnel_id && tainted.contains(*r.tunnel_id)) {
      ++result.report.rows_dropped_cascade;
    } else {
      result.records.push_back(r);
    }
  }
  return result;
}

struct BuildResult {
  DirectedGraph graph;
  std::size_t duplicate_edges_collapsed = 0;
  std::size_t self_loops_dropped = 0;

  void amend(CleaningReport& report) const noexcept {
    report.duplicate_edges_collapsed += duplicate_edges_collapsed;
    report.self_loops_dropped += self_loops_dropped;
  }
};

/// Builds the simple loop-free graph from cleaned records. Endpoints of
/// self-loop rows still become nodes.
inline BuildResult build_graph(std::span<const EdgeRecord> records) {
  BuildResult result;
  std::set<std::string> labels;
  std::vector<LabelEdge> pairs;
  pairs.reserve(records.size());
  for (const auto& r : records) {
    if (r.anonymous()) throw InvalidArgumentError("build_graph: record with missing endpoint");
    labels.insert(*r.src);
    labels.insert(*r.dst);
    if (*r.src == *r.dst) {
      ++result.self_loops_dropped;
    } else {
      pairs.emplace_back(*r.src, *r.dst);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  const auto unique_end = std::unique(pairs.begin(), pairs.end());
  result.duplicate_edges_collapsed = static_cast<std::size_t>(pairs.end() - unique_end);
  pairs.erase(unique_end, pairs.end());
  result.graph = DirectedGraph::from_labels({labels.begin(), labels.end()}, pairs);
  return result;
}

// ---------------------------------------------------------------------------
// CSV reading

struct CsvSchema {
  std::string src_column = "Src IP";
  std::string dst_column = "Dst IP";
  std::optional<std::string> tunnel_column;
  // Cell values (after trimming) that count as "no address". "" always does.
  std::vector<std::string> missing_tokens;
};

namespace detail {

// Splits one CSV record (RFC 4180 quoting). May consume further lines when a
// quoted field spans a newline. Returns false at end of input.
inline bool read_csv_row(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  for (;;) {
    if (i >= line.size()) {
      if (!quoted) break;
      std::string next;
      if (!std::getline(in, next)) {
        throw ParseError("unterminated quoted field at line " + std::to_string(line_no));
      }
      ++line_no;
      field += '\n';
      line = std::move(next);
      i = 0;
      continue;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r' || i + 1 != line.size()) {
      field += c;
    }
    ++i;
  }
  fields.push_back(std::move(field));
  return true;
}

}  // namespace detail

inline std::vector<EdgeRecord> read_edge_records(std::istream& in, const CsvSchema& schema = {}) {
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  if (!detail::read_csv_row(in, fields, line_no)) throw ParseError("CSV input has no header row");
  if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);

  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (trim(fields[i]) == name) return i;
    }
    throw ParseError("CSV header lacks column '" + name + "'");
  };
  const std::size_t src_col = column(schema.src_column);
  const std::size_t dst_col = column(schema.dst_column);
  const std::optional<std::size_t> tunnel_col =
      schema.tunnel_column ? std::optional(column(*schema.tunnel_column)) : std::nullopt;

  auto cell = [&](std::size_t col) -> std::optional<std::string> {
    if (col >= fields.size()) return std::nullopt;
    const auto value = trim(fields[col]);
    if (value.empty()) return std::nullopt;
    if (std::find(schema.missing_tokens.begin(), schema.missing_tokens.end(), value) !=
        schema.missing_tokens.end()) {
      return std::nullopt;
    }
    return std::string(value);
  };

  std::vector<EdgeRecord> records;
  while (detail::read_csv_row(in, fields, line_no)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    EdgeRecord r{cell(src_col), cell(dst_col), std::nullopt};
    if (tunnel_col) r.tunnel_id = cell(*tunnel_col);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace i2pr

#endif  // I2PR_INGEST_HPP_
