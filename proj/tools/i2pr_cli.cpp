// i2pr: ingest router-contact logs, measure the graph, and run percolation
// attacks. Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "i2pr/i2pr.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw i2pr::ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw i2pr::ParseError("cannot write '" + path + "'");
  out << text;
}

i2pr::DirectedGraph load_graph(const GlobalOptions& g) { return i2pr::parse_graph_json(read_text(g.input)); }

std::uint64_t require_seed(const GlobalOptions& g, const char* command) {
  if (!g.seed) throw UsageError(std::string(command) + " requires an explicit --seed");
  return *g.seed;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---------------------------------------------------------------------------

struct IngestOptions {
  std::string src_col = "Src IP";
  std::string dst_col = "Dst IP";
  std::string tunnel_col;
  std::string policy = "tunnel-cascade";
  std::vector<std::string> missing_tokens;
  std::string report_path;
};

int run_ingest(const GlobalOptions& g, const IngestOptions& o) {
  i2pr::CsvSchema schema;
  schema.src_column = o.src_col;
  schema.dst_column = o.dst_col;
  if (!o.tunnel_col.empty()) schema.tunnel_column = o.tunnel_col;
  schema.missing_tokens = o.missing_tokens;
  const auto policy =
      o.policy == "row-only" ? i2pr::CleaningPolicy::kRowOnly : i2pr::CleaningPolicy::kTunnelCascade;

  std::istringstream in(read_text(g.input));
  const auto records = i2pr::read_edge_records(in, schema);
  auto cleaned = i2pr::clean_records(records, policy);
  const auto built = i2pr::build_graph(cleaned.records);
  built.amend(cleaned.report);

  write_text(g.output, i2pr::write_graph_json(built.graph));
  const auto report = i2pr::to_json(cleaned.report).dump(2) + "\n";
  if (!o.report_path.empty()) write_text(o.report_path, report);
  if (!g.quiet) std::cerr << report;
  return 0;
}

struct StatsOptions {
  std::string metrics = "all";
  unsigned workers = 0;
};

int run_stats(const GlobalOptions& g, const StatsOptions& o) {
  const auto graph = load_graph(g);
  const auto snap = i2pr::snapshot(graph, i2pr::MetricSet::parse(o.metrics), o.workers);
  if (!g.quiet) std::cerr << i2pr::format_snapshot_text(snap);
  write_text(g.output, i2pr::to_json(snap).dump(2) + "\n");
  return 0;
}

struct CentralityOptions {
  std::string measure = "total-degree";
  std::size_t top = 10;
};

int run_centrality(const GlobalOptions& g, const CentralityOptions& o) {
  const auto graph = load_graph(g);
  const auto measure = i2pr::parse_measure(o.measure);
  const auto scores = i2pr::centrality_scores(graph, measure);
  const auto ranked = i2pr::top_k(scores, o.top == 0 ? graph.node_count() : o.top);

  std::string out;
  if (i2pr::is_degree_measure(measure)) {
    out = "label,in_degree,out_degree,total_degree\n";
    for (const auto& r : ranked) {
      const auto id = graph.id_of(r.label);
      out += i2pr::detail::csv_field(r.label) + "," + std::to_string(graph.in_degree(id)) + "," +
             std::to_string(graph.out_degree(id)) + "," + std::to_string(graph.degree(id)) + "\n";
    }
  } else {
    out = "label," + std::string(i2pr::to_string(measure)) + "\n";
    for (const auto& r : ranked) out += i2pr::detail::csv_field(r.label) + "," + i2pr::format_sig(r.score) + "\n";
  }
  write_text(g.output, out);
  return 0;
}

struct CommunityOptions {
  double resolution = 1.0;
  std::size_t min_size = 5;
};

int run_communities(const GlobalOptions& g, const CommunityOptions& o) {
  const auto seed = require_seed(g, "communities");
  const auto graph = load_graph(g);
  const auto partition = i2pr::louvain(graph, seed, o.resolution);
  if (!g.quiet) {
    std::cerr << partition.community_count << " communities, modularity "
              << i2pr::format_sig(partition.modularity, 7) << "\n";
  }
  write_text(g.output, i2pr::to_json(partition, o.min_size).dump(2) + "\n");
  return 0;
}

struct PercolateOptions {
  std::string strategy = "adaptive-degree";
  std::string measure = "total-degree";
  std::size_t steps = 3;
  std::string metrics = "density,apl";
  std::string format;
  unsigned workers = 0;
};

int run_percolate(const GlobalOptions& g, const PercolateOptions& o) {
  i2pr::AttackStrategy strategy;
  strategy.kind = i2pr::parse_attack_kind(o.strategy);
  strategy.measure = i2pr::parse_measure(o.measure);
  if (strategy.kind == i2pr::AttackKind::kRandom) strategy.seed = require_seed(g, "percolate --strategy random");

  auto format = i2pr::TraceFormat::kJson;
  if (o.format == "csv" || (o.format.empty() && ends_with(g.output, ".csv"))) format = i2pr::TraceFormat::kCsv;
  else if (!o.format.empty() && o.format != "json") throw UsageError("--format must be csv or json");

  const auto graph = load_graph(g);
  i2pr::AttackOptions options;
  options.workers = o.workers;
  const auto trace = i2pr::run_attack(graph, strategy, o.steps, i2pr::MetricSet::parse(o.metrics), options);
  if (!g.quiet) {
    for (const auto& step : trace.steps) {
      std::cerr << "step " << step.step << ": removed " << step.removed.value_or("-") << " (degree "
                << step.removed_degree << "), n=" << step.snapshot.n << " m=" << step.snapshot.m;
      if (step.snapshot.density) std::cerr << " density=" << i2pr::format_sig(*step.snapshot.density, 7);
      if (step.snapshot.apl) std::cerr << " apl=" << i2pr::format_sig(*step.snapshot.apl, 7);
      std::cerr << "\n";
    }
  }
  write_text(g.output, i2pr::emit_trace_series(trace, format));
  return 0;
}

struct GenerateOptions {
  std::string model = "uniform-random";
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::string degrees_path;
};

// CSV with columns in_degree,out_degree; one row per node.
i2pr::DirectedConfigurationSpec read_degree_file(const std::string& path, std::uint64_t seed) {
  std::istringstream in(read_text(path));
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  if (!i2pr::detail::read_csv_row(in, fields, line_no)) throw i2pr::ParseError("degree file: missing header");
  std::optional<std::size_t> in_col, out_col;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i2pr::trim(fields[i]) == "in_degree") in_col = i;
    if (i2pr::trim(fields[i]) == "out_degree") out_col = i;
  }
  if (!in_col || !out_col) throw i2pr::ParseError("degree file: header needs in_degree and out_degree");
  i2pr::DirectedConfigurationSpec spec;
  spec.seed = seed;
  while (i2pr::detail::read_csv_row(in, fields, line_no)) {
    if (fields.size() == 1 && i2pr::trim(fields[0]).empty()) continue;
    try {
      spec.in_degrees.push_back(std::stoull(fields.at(*in_col)));
      spec.out_degrees.push_back(std::stoull(fields.at(*out_col)));
    } catch (const std::exception&) {
      throw i2pr::ParseError("degree file: bad row at line " + std::to_string(line_no));
    }
  }
  return spec;
}

int run_generate(const GlobalOptions& g, const GenerateOptions& o) {
  i2pr::GeneratorSpec spec;
  if (o.model == "uniform-random") {
    spec = i2pr::UniformRandomSpec{o.nodes, o.edges, require_seed(g, "generate")};
  } else if (o.model == "preferential-attachment") {
    spec = i2pr::PreferentialAttachmentSpec{o.nodes, o.edges, require_seed(g, "generate")};
  } else if (o.model == "bidirected-star") {
    spec = i2pr::BidirectedStarSpec{o.nodes};
  } else if (o.model == "directed-configuration") {
    if (o.degrees_path.empty()) throw UsageError("directed-configuration needs --degrees");
    spec = read_degree_file(o.degrees_path, require_seed(g, "generate"));
  } else {
    throw UsageError("unknown --model '" + o.model + "'");
  }
  write_text(g.output, i2pr::write_graph_json(i2pr::generate(spec)));
  return 0;
}

struct ReportOptions {
  std::size_t top = 10;
  std::string countries_path;
  std::string format = "json";
};

int run_report(const GlobalOptions& g, const ReportOptions& o) {
  if (o.top == 0) throw UsageError("--top must be at least 1");
  const auto graph = load_graph(g);
  auto doc = i2pr::degree_table_json(graph, o.top);
  if (!o.countries_path.empty()) {
    std::istringstream in(read_text(o.countries_path));
    const auto mapping = i2pr::CountryMapping::read_csv(in);
    doc["degree_by_country"] = i2pr::ordered_json::array();
    for (const auto& row : i2pr::degree_by_country(graph, mapping, o.top)) {
      doc["degree_by_country"].push_back({{"country", row.country}, {"total_degree", row.total_degree}});
    }
  }
  if (o.format == "json") {
    write_text(g.output, doc.dump(2) + "\n");
    return 0;
  }
  if (o.format != "text") throw UsageError("--format must be json or text");

  std::ostringstream out;
  out << "rank,in_label,in_degree,out_label,out_degree,total_label,total_degree\n";
  for (std::size_t i = 0; i < doc["top_total"].size(); ++i) {
    out << i + 1;
    for (const char* key : {"top_in", "top_out", "top_total"}) {
      const auto& row = doc[key][i];
      out << "," << i2pr::detail::csv_field(row["label"].get<std::string>()) << "," << row["degree"].get<std::uint64_t>();
    }
    out << "\n";
  }
  if (doc.contains("degree_by_country")) {
    out << "\ncountry,total_degree\n";
    for (const auto& row : doc["degree_by_country"]) {
      out << row["country"].get<std::string>() << "," << row["total_degree"].get<std::uint64_t>() << "\n";
    }
  }
  write_text(g.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"I2P-style overlay resilience toolkit: graph metrics, communities and percolation attacks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("-i,--input", global.input, "Input file ('-' or omitted: stdin)");
  app.add_option("-o,--output", global.output, "Output file (omitted: stdout)");
  app.add_option("--seed", global.seed, "RNG seed (required by randomized commands)");
  app.add_flag("-q,--quiet", global.quiet, "Suppress summaries on stderr");

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "CSV edge list -> cleaned graph JSON");
  ingest_cmd->add_option("--src-col", ingest.src_col, "Source column name")->capture_default_str();
  ingest_cmd->add_option("--dst-col", ingest.dst_col, "Destination column name")->capture_default_str();
  ingest_cmd->add_option("--tunnel-col", ingest.tunnel_col, "Tunnel id column name");
  ingest_cmd->add_option("--policy", ingest.policy, "Cleaning policy")
      ->check(CLI::IsMember({"tunnel-cascade", "row-only"}))
      ->capture_default_str();
  ingest_cmd->add_option("--missing-token", ingest.missing_tokens, "Extra cell value meaning 'no address'");
  ingest_cmd->add_option("--report", ingest.report_path, "Write the cleaning report JSON here");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Whole-graph metrics snapshot");
  stats_cmd->add_option("--metrics", stats.metrics, "Comma list of metrics")->capture_default_str();
  stats_cmd->add_option("--workers", stats.workers, "BFS worker threads (0: auto)");

  CentralityOptions centrality;
  auto* centrality_cmd = app.add_subcommand("centrality", "Ranked centrality scores as CSV");
  centrality_cmd->add_option("--measure", centrality.measure, "Centrality measure")->capture_default_str();
  centrality_cmd->add_option("--top", centrality.top, "Rows to emit (0: all)")->capture_default_str();

  CommunityOptions community;
  auto* community_cmd = app.add_subcommand("communities", "Louvain communities as JSON");
  community_cmd->add_option("--resolution", community.resolution, "Modularity resolution")->capture_default_str();
  community_cmd->add_option("--min-size", community.min_size, "Keep communities larger than this")
      ->capture_default_str();

  PercolateOptions percolate;
  auto* percolate_cmd = app.add_subcommand("percolate", "Sequential node-removal attack trace");
  percolate_cmd->add_option("--strategy", percolate.strategy, "adaptive-degree | static-degree | random")
      ->capture_default_str();
  percolate_cmd->add_option("--measure", percolate.measure, "Ranking measure")->capture_default_str();
  percolate_cmd->add_option("--steps", percolate.steps, "Number of removals")->capture_default_str();
  percolate_cmd->add_option("--metrics", percolate.metrics, "Comma list of metrics per step")
      ->capture_default_str();
  percolate_cmd->add_option("--format", percolate.format, "csv | json (default: from --output extension)");
  percolate_cmd->add_option("--workers", percolate.workers, "BFS worker threads (0: auto)");

  GenerateOptions generate;
  auto* generate_cmd = app.add_subcommand("generate", "Synthetic digraph as graph JSON");
  generate_cmd->add_option("--model", generate.model,
                           "uniform-random | preferential-attachment | bidirected-star | directed-configuration")
      ->capture_default_str();
  generate_cmd->add_option("--nodes", generate.nodes, "Node count");
  generate_cmd->add_option("--edges", generate.edges, "Edge count");
  generate_cmd->add_option("--degrees", generate.degrees_path, "CSV of in_degree,out_degree per node");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Top-k degree tables and per-country degree");
  report_cmd->add_option("--top", report.top, "Rows per table")->capture_default_str();
  report_cmd->add_option("--countries", report.countries_path, "CSV with columns label,country");
  report_cmd->add_option("--format", report.format, "json | text")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(global, ingest);
    if (*stats_cmd) return run_stats(global, stats);
    if (*centrality_cmd) return run_centrality(global, centrality);
    if (*community_cmd) return run_communities(global, community);
    if (*percolate_cmd) return run_percolate(global, percolate);
    if (*generate_cmd) return run_generate(global, generate);
    if (*report_cmd) return run_report(global, report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const i2pr::InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const i2pr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
