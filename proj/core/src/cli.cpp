// Copyright 2026 The depnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "depnet/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "depnet/community.hpp"
#include "depnet/degree.hpp"
#include "depnet/graph.hpp"
#include "depnet/ingest.hpp"
#include "depnet/metrics.hpp"
#include "depnet/mining.hpp"
#include "depnet/null_models.hpp"
#include "depnet/report.hpp"

namespace depnet {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct GraphInputs {
  std::string snapshot;
  std::string nodes;
  std::string edges;
  bool lenient = false;
};

void add_graph_inputs(CLI::App* cmd, GraphInputs& in) {
  cmd->add_option("--graph", in.snapshot, "Snapshot file produced by `ingest`");
  cmd->add_option("--nodes", in.nodes, "Node table (.tsv or .jsonl)");
  cmd->add_option("--edges", in.edges, "Edge table (.tsv or .jsonl)");
  cmd->add_flag("--lenient", in.lenient,
                "Drop dangling/self-loop edges and unknown kinds instead of failing");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path + ": cannot open");
  return in;
}

DependencyGraph load_graph(const GraphInputs& in, BuildWarnings* warnings = nullptr) {
  if (!in.snapshot.empty()) return load_snapshot(in.snapshot);
  if (in.nodes.empty() || in.edges.empty())
    throw Error(ErrorCode::InvalidParameter, "provide --graph, or both --nodes and --edges");
  ParseOptions opts{in.lenient};
  auto nodes_in = open_input(in.nodes);
  auto entities = parse_nodes(nodes_in, table_format_for_path(in.nodes), opts);
  auto edges_in = open_input(in.edges);
  auto edges = parse_edges(edges_in, table_format_for_path(in.edges), opts);
  BuildResult built = build_graph(entities, edges, in.lenient);
  if (warnings) *warnings = built.warnings;
  return std::move(built.graph);
}

std::vector<EntityKind> parse_kind_list(const std::string& csv) {
  std::vector<EntityKind> kinds;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    auto kind = parse_entity_kind(token);
    if (!kind) throw CLI::ValidationError("--kinds", "unknown entity kind '" + token + "'");
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw CLI::ValidationError("--kinds", "empty kind list");
  return kinds;
}

std::vector<std::string> split_commas(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

// Data goes to the named file (atomically, with a metadata sidecar) or to
// the output stream when no file was named.
void deliver(const std::string& data, const std::string& out_path, std::ostream& out,
             const std::vector<std::string>& argv) {
  if (out_path.empty()) {
    out << data;
    return;
  }
  write_file_atomically(out_path, data);
  json meta;
  meta["tool"] = "depnet";
  meta["version"] = kVersion;
  meta["command"] = argv;
  meta["written_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  write_file_atomically(out_path + ".meta.json", meta.dump(2) + "\n");
}

std::vector<std::uint64_t> read_samples_file(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::uint64_t> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    try {
      samples.push_back(std::stoull(line));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadRow, path + " line " + std::to_string(line_no) +
                                         ": expected a non-negative integer");
    }
  }
  return samples;
}

std::vector<std::uint64_t> degree_samples(const DependencyGraph& graph, Direction dir,
                                          const std::vector<EntityKind>& kinds) {
  std::vector<std::uint64_t> samples;
  samples.reserve(graph.node_count());
  std::array<bool, kEntityKindCount> keep{};
  if (kinds.empty())
    keep.fill(true);
  else
    for (EntityKind k : kinds) keep[static_cast<std::size_t>(k)] = true;
  for (NodeIndex v = 0; v < graph.node_count(); ++v)
    if (keep[static_cast<std::size_t>(graph.entity(v).kind)])
      samples.push_back(graph.degree(v, dir));
  return samples;
}

std::string stats_to_json(const StatsReport& s) {
  json j;
  j["nodes"] = s.node_count;
  j["edges"] = s.edge_count;
  j["entries"] = s.entries;
  j["lemmas"] = s.lemmas;
  json by_kind;
  for (std::size_t k = 0; k < kEntityKindCount; ++k)
    by_kind[to_string(static_cast<EntityKind>(k))] = s.nodes_by_kind[k];
  j["nodes_by_kind"] = by_kind;
  if (s.loc) j["loc"] = *s.loc;
  return j.dump(2) + "\n";
}

std::string stats_to_csv(const StatsReport& s) {
  std::string out = "metric,value\n";
  out += "nodes," + std::to_string(s.node_count) + "\n";
  out += "edges," + std::to_string(s.edge_count) + "\n";
  out += "entries," + std::to_string(s.entries) + "\n";
  out += "lemmas," + std::to_string(s.lemmas) + "\n";
  for (std::size_t k = 0; k < kEntityKindCount; ++k)
    out += "nodes_" + std::string(to_string(static_cast<EntityKind>(k))) + "," +
           std::to_string(s.nodes_by_kind[k]) + "\n";
  if (s.loc) out += "loc," + std::to_string(*s.loc) + "\n";
  return out;
}

Direction direction_from(const std::string& text) {
  return text == "out" ? Direction::Out : Direction::In;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args) { return run_cli(args, std::cout, std::cerr); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // Error reports honor --format json even when parsing never finishes.
  bool json_errors = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format=json") json_errors = true;
    if (args[i] == "--format" && i + 1 < args.size() && args[i + 1] == "json") json_errors = true;
  }

  CLI::App app{"Dependency-network analysis for proof corpora and software systems", "depnet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // --- ingest ---------------------------------------------------------
  auto* cmd_ingest = app.add_subcommand("ingest", "Parse node/edge tables, validate, cache a snapshot");
  GraphInputs ingest_in;
  std::string ingest_out;
  cmd_ingest->add_option("--nodes", ingest_in.nodes, "Node table")->required();
  cmd_ingest->add_option("--edges", ingest_in.edges, "Edge table")->required();
  cmd_ingest->add_flag("--lenient", ingest_in.lenient, "Drop bad rows/edges with counted warnings");
  cmd_ingest->add_option("--out", ingest_out, "Snapshot path to write")->required();

  // --- stats ----------------------------------------------------------
  auto* cmd_stats = app.add_subcommand("stats", "Corpus statistics");
  GraphInputs stats_in;
  add_graph_inputs(cmd_stats, stats_in);
  std::string stats_sources;
  std::string stats_format = "json";
  std::string stats_out;
  cmd_stats->add_option("--sources", stats_sources, "Theory source directory for LOC counting");
  cmd_stats->add_option("--format", stats_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_stats->add_option("-o,--out", stats_out, "Output file (default stdout)");

  // --- degree ---------------------------------------------------------
  auto* cmd_degree = app.add_subcommand("degree", "Degree histogram (figure data)");
  GraphInputs degree_in;
  add_graph_inputs(cmd_degree, degree_in);
  std::string degree_direction = "in";
  std::string degree_kinds;
  bool degree_normalized = false;
  std::string degree_format = "csv";
  std::string degree_out;
  cmd_degree->add_option("--direction", degree_direction)->check(CLI::IsMember({"in", "out"}));
  cmd_degree->add_option("--kinds", degree_kinds, "Comma list of node kinds to count");
  cmd_degree->add_flag("--normalized", degree_normalized, "Emit probabilities instead of counts");
  cmd_degree->add_option("--format", degree_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_degree->add_option("-o,--out", degree_out, "Output file (default stdout)");

  // --- fit ------------------------------------------------------------
  auto* cmd_fit = app.add_subcommand("fit", "Discrete power-law fit");
  GraphInputs fit_in;
  add_graph_inputs(cmd_fit, fit_in);
  std::string fit_samples;
  std::string fit_direction = "in";
  std::string fit_kinds;
  std::uint64_t fit_xmin = 0;
  std::size_t fit_bootstrap = 0;
  std::uint64_t fit_seed = 0;
  std::size_t fit_min_tail = 50;
  std::string fit_format = "json";
  std::string fit_out;
  cmd_fit->add_option("--samples", fit_samples, "Sample file, one integer per line");
  cmd_fit->add_option("--direction", fit_direction)->check(CLI::IsMember({"in", "out"}));
  cmd_fit->add_option("--kinds", fit_kinds, "Comma list of node kinds to sample");
  cmd_fit->add_option("--xmin", fit_xmin, "Fix xmin instead of selecting by KS");
  cmd_fit->add_option("--bootstrap", fit_bootstrap, "Bootstrap replicates for the p-value");
  cmd_fit->add_option("--seed", fit_seed, "Bootstrap seed");
  cmd_fit->add_option("--min-tail", fit_min_tail, "Smallest tail size for xmin candidates");
  cmd_fit->add_option("--format", fit_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_fit->add_option("-o,--out", fit_out, "Output file (default stdout)");

  // --- generate -------------------------------------------------------
  auto* cmd_generate = app.add_subcommand("generate", "Seeded null-model generators");
  cmd_generate->require_subcommand(1);
  auto* cmd_er = cmd_generate->add_subcommand("er", "Erdos-Renyi digraph");
  std::uint64_t er_n = 0;
  double er_p = 0.0;
  std::uint64_t er_seed = 0;
  std::string er_out_nodes, er_out_edges;
  cmd_er->add_option("--n", er_n, "Node count")->required();
  cmd_er->add_option("--p", er_p, "Edge probability")->required();
  cmd_er->add_option("--seed", er_seed, "Seed");
  cmd_er->add_option("--out-nodes", er_out_nodes, "Node table to write")->required();
  cmd_er->add_option("--out-edges", er_out_edges, "Edge table to write")->required();

  auto* cmd_pa = cmd_generate->add_subcommand("pa", "Preferential-attachment digraph");
  std::uint64_t pa_n = 0, pa_m = 0, pa_seed = 0;
  std::string pa_out_nodes, pa_out_edges;
  cmd_pa->add_option("--n", pa_n, "Node count")->required();
  cmd_pa->add_option("--m", pa_m, "Out-edges per new node")->required();
  cmd_pa->add_option("--seed", pa_seed, "Seed");
  cmd_pa->add_option("--out-nodes", pa_out_nodes, "Node table to write")->required();
  cmd_pa->add_option("--out-edges", pa_out_edges, "Edge table to write")->required();

  auto* cmd_pl = cmd_generate->add_subcommand("plsample", "Discrete power-law sample");
  double pl_gamma = 0.0;
  std::uint64_t pl_xmin = 1, pl_seed = 0;
  std::size_t pl_n = 0;
  std::string pl_out;
  cmd_pl->add_option("--gamma", pl_gamma, "Exponent, > 1")->required();
  cmd_pl->add_option("--xmin", pl_xmin, "Support lower bound")->required();
  cmd_pl->add_option("--n", pl_n, "Sample count")->required();
  cmd_pl->add_option("--seed", pl_seed, "Seed");
  cmd_pl->add_option("-o,--out", pl_out, "Output file (default stdout)");

  // --- metrics --------------------------------------------------------
  auto* cmd_metrics = app.add_subcommand("metrics", "Per-node network metrics");
  GraphInputs metrics_in;
  add_graph_inputs(cmd_metrics, metrics_in);
  std::string metrics_betweenness = "exact";
  std::uint64_t metrics_seed = 0;
  std::string metrics_format = "csv";
  std::string metrics_out;
  cmd_metrics->add_option("--betweenness", metrics_betweenness,
                          "exact or sampled:K (K source samples)");
  cmd_metrics->add_option("--seed", metrics_seed, "Seed for sampled betweenness");
  cmd_metrics->add_option("--format", metrics_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_metrics->add_option("-o,--out", metrics_out, "Output file (default stdout)");

  // --- communities ----------------------------------------------------
  auto* cmd_comm = app.add_subcommand("communities", "Detect communities, compare with structure");
  GraphInputs comm_in;
  add_graph_inputs(cmd_comm, comm_in);
  std::string comm_level = "session";
  std::string comm_kinds;
  std::string comm_format = "csv";
  std::string comm_out;
  cmd_comm->add_option("--level", comm_level)->check(CLI::IsMember({"session", "theory"}));
  cmd_comm->add_option("--kinds", comm_kinds, "Kinds to cluster (default fact,constant,type,other)");
  cmd_comm->add_option("--format", comm_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_comm->add_option("-o,--out", comm_out, "Partition file (default stdout)");

  // --- recommend ------------------------------------------------------
  auto* cmd_rec = app.add_subcommand("recommend", "Refactoring recommendations vs declared structure");
  GraphInputs rec_in;
  add_graph_inputs(cmd_rec, rec_in);
  double rec_min_confidence = 0.5;
  std::string rec_level = "session";
  std::string rec_kinds;
  std::string rec_format = "csv";
  std::string rec_out;
  cmd_rec->add_option("--min-confidence", rec_min_confidence)->check(CLI::Range(0.0, 1.0));
  cmd_rec->add_option("--level", rec_level)->check(CLI::IsMember({"session", "theory"}));
  cmd_rec->add_option("--kinds", rec_kinds, "Kinds to cluster (default fact,constant,type,other)");
  cmd_rec->add_option("--format", rec_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_rec->add_option("-o,--out", rec_out, "Output file (default stdout)");

  // --- mine -----------------------------------------------------------
  auto* cmd_mine = app.add_subcommand("mine", "Frequent itemsets and association rules");
  GraphInputs mine_in;
  add_graph_inputs(cmd_mine, mine_in);
  std::uint64_t mine_min_support = 0;
  double mine_min_support_frac = 0.0;
  double mine_min_confidence = 0.5;
  std::string mine_item_kinds;
  std::string mine_format = "csv";
  std::string mine_out;
  std::string mine_rules_out;
  auto* opt_abs = cmd_mine->add_option("--min-support", mine_min_support, "Absolute support count");
  auto* opt_frac = cmd_mine->add_option("--min-support-frac", mine_min_support_frac,
                                        "Relative support in (0,1], converted to a count")
                       ->check(CLI::Range(0.0, 1.0));
  opt_abs->excludes(opt_frac);
  cmd_mine->add_option("--min-confidence", mine_min_confidence)->check(CLI::Range(0.0, 1.0));
  cmd_mine->add_option("--item-kinds", mine_item_kinds, "Kinds counted as items (default fact,constant)");
  cmd_mine->add_option("--format", mine_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_mine->add_option("-o,--out", mine_out, "Itemset file (default stdout)");
  cmd_mine->add_option("--rules-out", mine_rules_out, "Also emit association rules to this file");

  // --- suggest --------------------------------------------------------
  auto* cmd_suggest = app.add_subcommand("suggest", "Premise suggestions from mined rules");
  std::string suggest_rules;
  std::string suggest_items;
  std::size_t suggest_k = 5;
  std::string suggest_format = "csv";
  std::string suggest_out;
  cmd_suggest->add_option("--rules", suggest_rules, "rules.csv from `mine`")->required();
  cmd_suggest->add_option("--items", suggest_items, "Comma list of known items")->required();
  cmd_suggest->add_option("-k", suggest_k, "Suggestions to return");
  cmd_suggest->add_option("--format", suggest_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_suggest->add_option("-o,--out", suggest_out, "Output file (default stdout)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_ingest)) {
      BuildWarnings warnings;
      DependencyGraph graph = load_graph(ingest_in, &warnings);
      save_snapshot(graph, ingest_out);
      json summary;
      summary["nodes"] = graph.node_count();
      summary["edges"] = graph.edge_count();
      summary["snapshot"] = ingest_out;
      summary["warnings"] = {{"dangling_edges", warnings.dangling_edges},
                             {"self_loop_edges", warnings.self_loop_edges},
                             {"dangling_parents", warnings.dangling_parents},
                             {"duplicate_entities", warnings.duplicate_entities}};
      out << summary.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_stats)) {
      DependencyGraph graph = load_graph(stats_in);
      std::optional<std::filesystem::path> sources;
      if (!stats_sources.empty()) sources = stats_sources;
      StatsReport report = corpus_stats(graph, sources);
      deliver(stats_format == "json" ? stats_to_json(report) : stats_to_csv(report), stats_out,
              out, args);
      return 0;
    }

    if (app.got_subcommand(cmd_degree)) {
      DependencyGraph graph = load_graph(degree_in);
      std::vector<EntityKind> kinds;
      if (!degree_kinds.empty()) kinds = parse_kind_list(degree_kinds);
      DegreeDistribution dist =
          degree_histogram(graph, direction_from(degree_direction), kinds);
      std::string data;
      if (degree_format == "json") {
        json rows = json::array();
        for (const auto& [deg, count] : dist.histogram) {
          json row;
          row["deg"] = deg;
          if (degree_normalized)
            row["pr"] = static_cast<double>(count) / static_cast<double>(dist.n);
          else
            row["count"] = count;
          rows.push_back(row);
        }
        data = rows.dump(2) + "\n";
      } else {
        std::ostringstream csv;
        emit_degree_csv(dist, degree_normalized, csv);
        data = csv.str();
      }
      deliver(data, degree_out, out, args);
      return 0;
    }

    if (app.got_subcommand(cmd_fit)) {
      std::vector<std::uint64_t> samples;
      if (!fit_samples.empty()) {
        samples = read_samples_file(fit_samples);
      } else {
        DependencyGraph graph = load_graph(fit_in);
        std::vector<EntityKind> kinds;
        if (!fit_kinds.empty()) kinds = parse_kind_list(fit_kinds);
        samples = degree_samples(graph, direction_from(fit_direction), kinds);
      }
      PowerLawFit fit;
      if (cmd_fit->count("--xmin") > 0) {
        fit = fit_power_law(samples, fit_xmin);
      } else {
        SelectXminOptions opts;
        opts.min_tail_samples = fit_min_tail;
        fit = select_xmin(samples, opts);
      }
      if (fit_bootstrap > 0) fit.p_value = bootstrap_pvalue(samples, fit, fit_bootstrap, fit_seed);
      std::string data;
      if (fit_format == "csv") {
        data = "gamma,xmin,ks_distance,n_tail,log_likelihood,p_value,at_bracket_edge\n";
        data += format_double(fit.gamma) + "," + std::to_string(fit.xmin) + "," +
                format_double(fit.ks_distance) + "," + std::to_string(fit.n_tail) + "," +
                format_double(fit.log_likelihood) + "," +
                (fit.p_value ? format_double(*fit.p_value) : "") + "," +
                (fit.at_bracket_edge ? "true" : "false") + "\n";
      } else {
        data = fit_to_json(fit);
      }
      deliver(data, fit_out, out, args);
      return 0;
    }

    if (app.got_subcommand(cmd_generate)) {
      if (cmd_generate->got_subcommand(cmd_pl)) {
        auto samples = power_law_sample(pl_gamma, pl_xmin, pl_n, pl_seed);
        std::string data;
        for (std::uint64_t s : samples) {
          data += std::to_string(s);
          data += '\n';
        }
        deliver(data, pl_out, out, args);
        return 0;
      }
      DependencyGraph graph = cmd_generate->got_subcommand(cmd_er)
                                  ? erdos_renyi(er_n, er_p, er_seed)
                                  : preferential_attachment(pa_n, pa_m, pa_seed);
      const std::string& out_nodes = cmd_generate->got_subcommand(cmd_er) ? er_out_nodes : pa_out_nodes;
      const std::string& out_edges = cmd_generate->got_subcommand(cmd_er) ? er_out_edges : pa_out_edges;
      {
        std::ostringstream nodes_text;
        write_nodes(graph, nodes_text, table_format_for_path(out_nodes));
        write_file_atomically(out_nodes, nodes_text.str());
      }
      {
        std::ostringstream edges_text;
        write_edges(graph, edges_text, table_format_for_path(out_edges));
        write_file_atomically(out_edges, edges_text.str());
      }
      json summary;
      summary["nodes"] = graph.node_count();
      summary["edges"] = graph.edge_count();
      out << summary.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_metrics)) {
      DependencyGraph graph = load_graph(metrics_in);
      BetweennessMode mode = BetweennessMode::exact();
      if (metrics_betweenness != "exact") {
        if (!metrics_betweenness.starts_with("sampled:"))
          throw Error(ErrorCode::InvalidParameter,
                      "--betweenness must be 'exact' or 'sampled:K'");
        std::size_t k = 0;
        try {
          k = std::stoull(metrics_betweenness.substr(8));
        } catch (const std::exception&) {
          throw Error(ErrorCode::InvalidParameter, "bad sample count in --betweenness");
        }
        mode = BetweennessMode::sampled(k, metrics_seed);
      }
      auto rows = compute_node_metrics(graph, mode);
      std::string data;
      if (metrics_format == "json") {
        json arr = json::array();
        for (const NodeMetrics& m : rows) {
          arr.push_back({{"id", m.node},
                         {"in_degree", m.in_degree},
                         {"out_degree", m.out_degree},
                         {"ego_nodes", m.ego_nodes},
                         {"ego_edges", m.ego_edges},
                         {"clustering", m.clustering},
                         {"betweenness", m.betweenness},
                         {"centrality", m.centrality}});
        }
        data = arr.dump(2) + "\n";
      } else {
        std::ostringstream csv;
        write_metrics_csv(rows, csv);
        data = csv.str();
      }
      deliver(data, metrics_out, out, args);
      return 0;
    }

    if (app.got_subcommand(cmd_comm) || app.got_subcommand(cmd_rec)) {
      const bool recommending = app.got_subcommand(cmd_rec);
      const GraphInputs& inputs = recommending ? rec_in : comm_in;
      const std::string& kinds_text = recommending ? rec_kinds : comm_kinds;
      const std::string& level_text = recommending ? rec_level : comm_level;

      DependencyGraph graph = load_graph(inputs);
      std::vector<EntityKind> kinds =
          kinds_text.empty()
              ? std::vector<EntityKind>{EntityKind::Fact, EntityKind::Constant,
                                        EntityKind::TypeCon, EntityKind::Other}
              : parse_kind_list(kinds_text);
      const std::array<EdgeKind, 3> all_edges{EdgeKind::Imports, EdgeKind::Uses, EdgeKind::Defines};
      DependencyGraph scope = graph.induced_subgraph(kinds, all_edges);
      const EntityKind level =
          level_text == "theory" ? EntityKind::Theory : EntityKind::Session;

      // Declared groups come from the full graph's parent chains, restricted
      // to the clustered scope.
      DeclaredStructure full_declared = declared_partition(graph, level);
      DeclaredStructure declared;
      {
        std::vector<std::uint32_t> labels(scope.node_count());
        std::unordered_map<std::uint32_t, std::uint32_t> dense;
        for (NodeIndex v = 0; v < scope.node_count(); ++v) {
          NodeIndex orig = graph.index_of(scope.id_of(v));
          std::uint32_t g = full_declared.partition.assignment[orig];
          auto [it, inserted] = dense.try_emplace(g, static_cast<std::uint32_t>(declared.group_names.size()));
          if (inserted) declared.group_names.push_back(full_declared.group_names[g]);
          labels[v] = it->second;
        }
        declared.partition.assignment = std::move(labels);
        declared.partition.community_count =
            static_cast<std::uint32_t>(declared.group_names.size());
      }

      Partition predicted = detect_communities(scope.undirected_projection());

      if (recommending) {
        auto recs = recommend_refactorings(scope, declared, predicted, rec_min_confidence);
        std::string data;
        if (rec_format == "json") {
          json arr = json::array();
          for (const auto& r : recs)
            arr.push_back({{"entity", r.entity},
                           {"declared", r.declared_group},
                           {"suggested", r.suggested_group},
                           {"confidence", r.confidence}});
          data = arr.dump(2) + "\n";
        } else {
          std::ostringstream csv;
          write_recommendations_csv(recs, csv);
          data = csv.str();
        }
        deliver(data, rec_out, out, args);
        return 0;
      }

      std::string data;
      if (comm_format == "json") {
        json arr = json::array();
        for (NodeIndex v = 0; v < scope.node_count(); ++v)
          arr.push_back({{"entity", scope.id_of(v)}, {"community", predicted.assignment[v]}});
        data = arr.dump(2) + "\n";
      } else {
        std::ostringstream csv;
        write_communities_csv(scope, predicted, csv);
        data = csv.str();
      }
      json summary;
      summary["communities"] = predicted.community_count;
      summary["modularity"] = modularity(scope.undirected_projection(), predicted);
      summary["ari_vs_declared"] = compare_partitions(predicted, declared.partition);
      summary["level"] = level_text;
      if (!comm_out.empty()) {
        deliver(data, comm_out, out, args);
        out << summary.dump(2) << "\n";
      } else {
        out << data;
        err << summary.dump(2) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(cmd_mine)) {
      DependencyGraph graph = load_graph(mine_in);
      TransactionSet txns =
          mine_item_kinds.empty()
              ? extract_transactions(graph)
              : extract_transactions(graph, parse_kind_list(mine_item_kinds));
      std::uint64_t min_support = mine_min_support;
      if (opt_frac->count() > 0) {
        min_support = static_cast<std::uint64_t>(
            std::ceil(mine_min_support_frac * static_cast<double>(txns.transactions.size())));
        if (min_support < 1) min_support = 1;
      }
      if (min_support < 1)
        throw Error(ErrorCode::InvalidParameter, "give --min-support or --min-support-frac");
      auto itemsets = frequent_itemsets(txns.transactions, min_support);
      std::string data;
      if (mine_format == "json") {
        json arr = json::array();
        for (const auto& s : itemsets) arr.push_back({{"items", s.items}, {"support", s.support}});
        data = arr.dump(2) + "\n";
      } else {
        std::ostringstream csv;
        write_itemsets_csv(itemsets, csv);
        data = csv.str();
      }
      deliver(data, mine_out, out, args);
      if (!mine_rules_out.empty()) {
        auto rules = association_rules(itemsets, txns.transactions, mine_min_confidence);
        std::ostringstream csv;
        write_rules_csv(rules, csv);
        deliver(csv.str(), mine_rules_out, out, args);
      }
      return 0;
    }

    if (app.got_subcommand(cmd_suggest)) {
      auto rules_in = open_input(suggest_rules);
      auto rules = read_rules_csv(rules_in);
      auto items = split_commas(suggest_items);
      auto ranked = suggest_premises(rules, items, suggest_k);
      std::string data;
      if (suggest_format == "json") {
        json arr = json::array();
        for (const auto& s : ranked)
          arr.push_back({{"item", s.item}, {"confidence", s.confidence}, {"support", s.support}});
        data = arr.dump(2) + "\n";
      } else {
        data = "item,confidence,support\n";
        for (const auto& s : ranked)
          data += s.item + "," + format_double(s.confidence) + "," + std::to_string(s.support) + "\n";
      }
      deliver(data, suggest_out, out, args);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (json_errors) {
      json j;
      j["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      err << j.dump(2) << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // no subcommand matched (unreachable with require_subcommand)
}

}  // namespace depnet
