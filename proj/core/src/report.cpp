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

#include "depnet/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace depnet {

namespace fs = std::filesystem;

namespace {

constexpr char kSnapshotMagic[8] = {'D', 'P', 'N', 'T', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kSnapshotVersion = 1;

[[noreturn]] void io_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::IoError, path.string() + ": " + what);
}

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const char*& p, const char* end) {
  if (end - p < static_cast<std::ptrdiff_t>(sizeof(T)))
    throw Error(ErrorCode::IoError, "snapshot truncated");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  p += sizeof(T);
  return static_cast<T>(v);
}

void put_string(std::string& out, const std::string& s) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

std::string get_string(const char*& p, const char* end) {
  auto len = get_le<std::uint32_t>(p, end);
  if (end - p < static_cast<std::ptrdiff_t>(len))
    throw Error(ErrorCode::IoError, "snapshot truncated");
  std::string s(p, len);
  p += len;
  return s;
}

// Minimal RFC 4180 quoting; plain ids pass through untouched so the files
// match the documented layout byte for byte.
std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string join_items(const std::vector<std::string>& items) {
  std::string joined;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) joined += ';';
    joined += items[i];
  }
  return joined;
}

std::vector<std::string> split_items(const std::string& joined) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= joined.size()) {
    std::size_t sep = joined.find(';', start);
    if (sep == std::string::npos) {
      if (start < joined.size()) items.push_back(joined.substr(start));
      break;
    }
    items.push_back(joined.substr(start, sep - start));
    start = sep + 1;
  }
  return items;
}

// One CSV record, honoring quotes. Returns false at end of stream.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size()) {
      fields.push_back(field);
      break;
    }
    char c = line[i];
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
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  return true;
}

}  // namespace

StatsReport corpus_stats(const DependencyGraph& graph,
                         const std::optional<fs::path>& source_dir) {
  StatsReport report;
  report.node_count = graph.node_count();
  report.edge_count = graph.edge_count();
  for (std::size_t k = 0; k < kEntityKindCount; ++k)
    report.nodes_by_kind[k] = graph.node_count(static_cast<EntityKind>(k));
  report.entries = graph.node_count(EntityKind::Session);
  report.lemmas = graph.node_count(EntityKind::Fact);

  if (source_dir) {
    std::error_code ec;
    if (!fs::is_directory(*source_dir, ec)) io_error(*source_dir, "not a readable directory");
    std::uint64_t lines = 0;
    for (auto it = fs::recursive_directory_iterator(*source_dir, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) io_error(*source_dir, ec.message());
      if (!it->is_regular_file() || it->path().extension() != ".thy") continue;
      std::ifstream in(it->path(), std::ios::binary);
      if (!in) io_error(it->path(), "cannot open");
      char buffer[1 << 16];
      while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        lines += static_cast<std::uint64_t>(
            std::count(buffer, buffer + in.gcount(), '\n'));
      }
    }
    report.loc = lines;
  }
  return report;
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::size_t emit_degree_csv(const DegreeDistribution& dist, bool normalized, std::ostream& sink) {
  std::string out = normalized ? "deg,pr\n" : "deg,count\n";
  for (const auto& [degree, count] : dist.histogram) {
    out += std::to_string(degree);
    out += ',';
    if (normalized)
      out += format_double(static_cast<double>(count) / static_cast<double>(dist.n));
    else
      out += std::to_string(count);
    out += '\n';
  }
  sink.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!sink) throw Error(ErrorCode::IoError, "degree CSV sink write failed");
  return out.size();
}

void write_metrics_csv(std::span<const NodeMetrics> rows, std::ostream& sink) {
  sink << "id,in_degree,out_degree,ego_nodes,ego_edges,clustering,betweenness,centrality\n";
  for (const NodeMetrics& m : rows) {
    sink << csv_field(m.node) << ',' << m.in_degree << ',' << m.out_degree << ',' << m.ego_nodes
         << ',' << m.ego_edges << ',' << format_double(m.clustering) << ','
         << format_double(m.betweenness) << ',' << format_double(m.centrality) << '\n';
  }
}

void write_recommendations_csv(std::span<const RefactoringRecommendation> rows,
                               std::ostream& sink) {
  sink << "entity,declared,suggested,confidence\n";
  for (const RefactoringRecommendation& r : rows) {
    sink << csv_field(r.entity) << ',' << csv_field(r.declared_group) << ','
         << csv_field(r.suggested_group) << ',' << format_double(r.confidence) << '\n';
  }
}

void write_itemsets_csv(std::span<const FrequentItemset> rows, std::ostream& sink) {
  sink << "items,support\n";
  for (const FrequentItemset& s : rows)
    sink << csv_field(join_items(s.items)) << ',' << s.support << '\n';
}

void write_rules_csv(std::span<const AssociationRule> rows, std::ostream& sink) {
  sink << "antecedent,consequent,support,confidence\n";
  for (const AssociationRule& r : rows) {
    sink << csv_field(join_items(r.antecedent)) << ',' << csv_field(join_items(r.consequent))
         << ',' << r.support << ',' << format_double(r.confidence) << '\n';
  }
}

void write_communities_csv(const DependencyGraph& graph, const Partition& partition,
                           std::ostream& sink) {
  sink << "entity,community\n";
  for (NodeIndex v = 0; v < graph.node_count(); ++v)
    sink << csv_field(graph.id_of(v)) << ',' << partition.assignment[v] << '\n';
}

std::vector<AssociationRule> read_rules_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!read_csv_record(in, fields) || fields.size() != 4 || fields[0] != "antecedent")
    throw Error(ErrorCode::BadRow, "expected rules.csv header");
  std::vector<AssociationRule> rules;
  std::size_t line_no = 1;
  while (read_csv_record(in, fields)) {
    ++line_no;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 4)
      throw Error(ErrorCode::BadRow, "line " + std::to_string(line_no) + ": expected 4 columns");
    AssociationRule rule;
    rule.antecedent = split_items(fields[0]);
    rule.consequent = split_items(fields[1]);
    auto parse_u64 = [&](const std::string& text) {
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(ErrorCode::BadRow, "line " + std::to_string(line_no) + ": bad integer");
      return value;
    };
    rule.support = parse_u64(fields[2]);
    try {
      rule.confidence = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadRow, "line " + std::to_string(line_no) + ": bad confidence");
    }
    std::sort(rule.antecedent.begin(), rule.antecedent.end());
    std::sort(rule.consequent.begin(), rule.consequent.end());
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string fit_to_json(const PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["gamma"] = fit.gamma;
  j["xmin"] = fit.xmin;
  j["ks_distance"] = fit.ks_distance;
  j["n_tail"] = fit.n_tail;
  j["log_likelihood"] = fit.log_likelihood;
  if (fit.p_value) j["p_value"] = *fit.p_value;
  j["at_bracket_edge"] = fit.at_bracket_edge;
  return j.dump(2) + "\n";
}

void save_snapshot(const DependencyGraph& graph, const fs::path& path) {
  std::string blob;
  blob.reserve(64 + graph.node_count() * 24 + graph.edge_count() * 9);
  blob.append(kSnapshotMagic, sizeof(kSnapshotMagic));
  put_le<std::uint32_t>(blob, kSnapshotVersion);
  put_le<std::uint64_t>(blob, graph.node_count());
  put_le<std::uint64_t>(blob, graph.edge_count());
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    const Entity& e = graph.entity(v);
    put_string(blob, e.id);
    blob.push_back(static_cast<char>(e.kind));
    put_string(blob, e.name);
    auto parent = graph.parent_of(v);
    put_le<std::uint32_t>(blob, parent ? *parent : kNoNode);
  }
  for (const DenseEdge& e : graph.edges()) {
    put_le<std::uint32_t>(blob, e.src);
    put_le<std::uint32_t>(blob, e.dst);
    blob.push_back(static_cast<char>(e.kind));
  }
  write_file_atomically(path, blob);
}

DependencyGraph load_snapshot(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open");
  std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const char* p = blob.data();
  const char* end = p + blob.size();

  if (blob.size() < sizeof(kSnapshotMagic) ||
      std::memcmp(p, kSnapshotMagic, sizeof(kSnapshotMagic)) != 0)
    io_error(path, "not a depnet snapshot");
  p += sizeof(kSnapshotMagic);
  const auto version = get_le<std::uint32_t>(p, end);
  if (version != kSnapshotVersion)
    io_error(path, "unsupported snapshot version " + std::to_string(version));

  const auto node_count = get_le<std::uint64_t>(p, end);
  const auto edge_count = get_le<std::uint64_t>(p, end);

  std::vector<Entity> entities;
  entities.reserve(node_count);
  std::vector<std::uint32_t> parent_slots;
  parent_slots.reserve(node_count);
  for (std::uint64_t i = 0; i < node_count; ++i) {
    Entity e;
    e.id = get_string(p, end);
    e.kind = static_cast<EntityKind>(get_le<std::uint8_t>(p, end));
    if (static_cast<std::uint8_t>(e.kind) >= kEntityKindCount) io_error(path, "bad entity kind");
    e.name = get_string(p, end);
    parent_slots.push_back(get_le<std::uint32_t>(p, end));
    entities.push_back(std::move(e));
  }
  for (std::uint64_t i = 0; i < node_count; ++i) {
    if (parent_slots[i] == kNoNode) continue;
    if (parent_slots[i] >= node_count) io_error(path, "bad parent index");
    entities[i].parent = entities[parent_slots[i]].id;
  }
  std::vector<DenseEdge> edges;
  edges.reserve(edge_count);
  for (std::uint64_t i = 0; i < edge_count; ++i) {
    DenseEdge e;
    e.src = get_le<std::uint32_t>(p, end);
    e.dst = get_le<std::uint32_t>(p, end);
    e.kind = static_cast<EdgeKind>(get_le<std::uint8_t>(p, end));
    if (static_cast<std::uint8_t>(e.kind) >= kEdgeKindCount) io_error(path, "bad edge kind");
    edges.push_back(e);
  }
  if (p != end) io_error(path, "trailing bytes");
  return DependencyGraph::from_parts(std::move(entities), std::move(edges));
}

void write_file_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error(tmp, "cannot open for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) io_error(tmp, "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) io_error(path, "rename failed: " + ec.message());
}

}  // namespace depnet
