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

#include "depnet/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace depnet {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad_row(std::size_t line_no, const std::string& reason) {
  throw Error(ErrorCode::BadRow, "line " + std::to_string(line_no) + ": " + reason);
}

// Strips one trailing \r (CRLF input) and trailing spaces.
void rstrip(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string_view strip_trailing_spaces(std::string_view field) {
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  return field;
}

void check_field(std::string_view value, std::size_t line_no) {
  if (value.find('\t') != std::string_view::npos || value.find('\n') != std::string_view::npos)
    bad_row(line_no, "field contains tab or newline");
}

EntityKind node_kind_for(std::string_view text, bool lenient, std::size_t line_no) {
  if (auto k = parse_entity_kind(text)) return *k;
  if (lenient) return EntityKind::Other;
  bad_row(line_no, "unknown entity kind '" + std::string(text) + "'");
}

// Generic line loop: feeds non-blank data lines to `row`, with 1-based line
// numbers. The header line is validated against `header` for TSV input.
template <typename RowFn>
void for_each_row(std::istream& in, TableFormat format, std::string_view header, RowFn row) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    rstrip(line);
    if (line.empty()) continue;
    if (format == TableFormat::Tsv && !saw_header) {
      if (line != header) bad_row(line_no, "expected header '" + std::string(header) + "'");
      saw_header = true;
      continue;
    }
    row(std::string_view(line), line_no);
  }
}

std::string json_string_field(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) bad_row(line_no, std::string("missing field '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

TableFormat table_format_for_path(std::string_view path) {
  if (path.ends_with(".jsonl") || path.ends_with(".ndjson")) return TableFormat::JsonLines;
  return TableFormat::Tsv;
}

std::vector<Entity> parse_nodes(std::istream& in, TableFormat format, const ParseOptions& options,
                                ParseStats* stats) {
  std::vector<Entity> entities;
  for_each_row(in, format, "id\tkind\tname\tparent", [&](std::string_view line, std::size_t line_no) {
    Entity e;
    if (format == TableFormat::Tsv) {
      auto fields = split_tabs(line);
      if (fields.size() != 4) bad_row(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
      fields[3] = strip_trailing_spaces(fields[3]);
      if (fields[0].empty()) bad_row(line_no, "empty id");
      e.id = std::string(fields[0]);
      e.kind = node_kind_for(fields[1], options.lenient, line_no);
      e.name = std::string(fields[2]);
      if (!fields[3].empty()) e.parent = std::string(fields[3]);
    } else {
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) bad_row(line_no, "malformed JSON object");
      e.id = json_string_field(obj, "id", line_no);
      if (e.id.empty()) bad_row(line_no, "empty id");
      e.kind = node_kind_for(json_string_field(obj, "kind", line_no), options.lenient, line_no);
      e.name = json_string_field(obj, "name", line_no);
      if (auto it = obj.find("parent"); it != obj.end() && it->is_string() && !it->get<std::string>().empty())
        e.parent = it->get<std::string>();
      check_field(e.id, line_no);
      check_field(e.name, line_no);
      if (e.parent) check_field(*e.parent, line_no);
    }
    if (stats) ++stats->rows;
    entities.push_back(std::move(e));
  });
  return entities;
}

std::vector<DepEdge> parse_edges(std::istream& in, TableFormat format, const ParseOptions& options,
                                 ParseStats* stats) {
  std::vector<DepEdge> edges;
  for_each_row(in, format, "src\tdst\tkind", [&](std::string_view line, std::size_t line_no) {
    std::string src, dst, kind_text;
    if (format == TableFormat::Tsv) {
      auto fields = split_tabs(line);
      if (fields.size() != 3) bad_row(line_no, "expected 3 columns, got " + std::to_string(fields.size()));
      fields[2] = strip_trailing_spaces(fields[2]);
      src = std::string(fields[0]);
      dst = std::string(fields[1]);
      kind_text = std::string(fields[2]);
    } else {
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) bad_row(line_no, "malformed JSON object");
      src = json_string_field(obj, "src", line_no);
      dst = json_string_field(obj, "dst", line_no);
      kind_text = json_string_field(obj, "kind", line_no);
      check_field(src, line_no);
      check_field(dst, line_no);
    }
    if (src.empty() || dst.empty()) bad_row(line_no, "empty endpoint id");
    if (stats) ++stats->rows;
    auto kind = parse_edge_kind(kind_text);
    if (!kind) {
      if (options.lenient) {
        if (stats) ++stats->skipped_unknown_edge_kind;
        return;
      }
      throw Error(ErrorCode::UnknownEdgeKind,
                  "line " + std::to_string(line_no) + ": '" + kind_text + "'");
    }
    edges.push_back(DepEdge{std::move(src), std::move(dst), *kind});
  });
  return edges;
}

// ---------------------------------------------------------------------------
// Theory headers

namespace {

// Cursor over the header text with positioned errors.
struct HeaderScanner {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    throw Error(ErrorCode::ParseError,
                "at offset " + std::to_string(pos) + ": expected " + expected);
  }

  bool eof() const { return pos >= text.size(); }

  // Whitespace and (* ... *) comments, which nest.
  void skip_trivia() {
    while (!eof()) {
      char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
        continue;
      }
      if (c == '(' && pos + 1 < text.size() && text[pos + 1] == '*') {
        std::size_t depth = 1;
        std::size_t p = pos + 2;
        while (p < text.size() && depth > 0) {
          if (text[p] == '(' && p + 1 < text.size() && text[p + 1] == '*') {
            ++depth;
            p += 2;
          } else if (text[p] == '*' && p + 1 < text.size() && text[p + 1] == ')') {
            --depth;
            p += 2;
          } else {
            ++p;
          }
        }
        if (depth > 0) fail("closing '*)'");
        pos = p;
        continue;
      }
      break;
    }
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'' || c == '.' || c == '-';
  }

  // Bare identifier or double-quoted string; empty optional when the next
  // token is not a name.
  std::optional<std::string> try_name() {
    skip_trivia();
    if (eof()) return std::nullopt;
    if (text[pos] == '"') {
      std::size_t end = text.find('"', pos + 1);
      if (end == std::string_view::npos) fail("closing '\"'");
      std::string out(text.substr(pos + 1, end - pos - 1));
      pos = end + 1;
      return out;
    }
    std::size_t start = pos;
    while (pos < text.size() && name_char(text[pos])) ++pos;
    if (pos == start) return std::nullopt;
    return std::string(text.substr(start, pos - start));
  }

  std::string expect_name(const std::string& what) {
    skip_trivia();
    std::size_t at = pos;
    auto name = try_name();
    if (!name || name->empty()) {
      pos = at;
      fail(what);
    }
    return *name;
  }

  void expect_keyword(std::string_view kw) {
    skip_trivia();
    std::size_t at = pos;
    auto name = try_name();
    if (!name || *name != kw) {
      pos = at;
      fail("keyword '" + std::string(kw) + "'");
    }
  }
};

}  // namespace

TheoryHeader parse_theory_header(std::string_view source) {
  HeaderScanner s{source};
  s.expect_keyword("theory");
  TheoryHeader header;
  header.name = s.expect_name("theory name");
  s.expect_keyword("imports");

  std::vector<std::string> imports;
  std::unordered_set<std::string> seen;
  while (true) {
    s.skip_trivia();
    if (s.eof()) throw Error(ErrorCode::MissingBegin, "header ends before 'begin'");
    std::size_t at = s.pos;
    auto name = s.try_name();
    if (!name) {
      s.pos = at;
      s.fail("import name or 'begin'");
    }
    if (*name == "begin" || *name == "keywords" || *name == "abbrevs") {
      if (imports.empty()) {
        s.pos = at;
        s.fail("at least one import name");
      }
      if (*name == "begin") break;
      // keywords/abbrevs sections: skip tokens until the next section marker.
      bool ended = false;
      while (!ended) {
        s.skip_trivia();
        if (s.eof()) throw Error(ErrorCode::MissingBegin, "header ends before 'begin'");
        std::size_t mark = s.pos;
        auto tok = s.try_name();
        if (!tok) {
          ++s.pos;  // punctuation inside the section ("::", commas, ...)
          continue;
        }
        if (*tok == "begin") {
          ended = true;
        } else if (*tok == "keywords" || *tok == "abbrevs") {
          s.pos = mark;  // let the outer loop re-dispatch
          break;
        }
      }
      if (ended) break;
      continue;
    }
    if (seen.insert(*name).second) imports.push_back(*name);
  }
  header.imports = std::move(imports);
  return header;
}

// ---------------------------------------------------------------------------
// Graph building

BuildResult build_graph(std::span<const Entity> entities, std::span<const DepEdge> edges,
                        bool lenient) {
  BuildResult result;
  GraphBuilder builder;

  if (!lenient) {
    for (const Entity& e : entities) builder.add_entity(e);
    for (const DepEdge& e : edges) builder.add_edge(e);
    result.graph = builder.seal();
    return result;
  }

  struct SvHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, const Entity*, SvHash, std::equal_to<>> by_id;
  std::vector<Entity> kept;
  kept.reserve(entities.size());
  for (const Entity& e : entities) {
    auto [it, inserted] = by_id.try_emplace(e.id, &e);
    if (!inserted) {
      if (!(*it->second == e)) ++result.warnings.duplicate_entities;
      continue;
    }
    kept.push_back(e);
  }
  for (Entity& e : kept) {
    if (!e.parent) continue;
    auto it = by_id.find(std::string_view(*e.parent));
    if (it == by_id.end() ||
        containment_rank(it->second->kind) >= containment_rank(e.kind)) {
      e.parent.reset();
      ++result.warnings.dangling_parents;
    }
  }
  for (Entity& e : kept) builder.add_entity(std::move(e));

  for (const DepEdge& e : edges) {
    if (e.src == e.dst) {
      ++result.warnings.self_loop_edges;
      continue;
    }
    if (!by_id.contains(std::string_view(e.src)) || !by_id.contains(std::string_view(e.dst))) {
      ++result.warnings.dangling_edges;
      continue;
    }
    builder.add_edge(e);
  }
  result.graph = builder.seal();
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

void write_nodes(const DependencyGraph& graph, std::ostream& out, TableFormat format) {
  auto check = [](const std::string& field) {
    if (field.find('\t') != std::string::npos || field.find('\n') != std::string::npos)
      throw Error(ErrorCode::InvalidParameter, "field contains tab or newline: " + field);
  };
  if (format == TableFormat::Tsv) {
    out << "id\tkind\tname\tparent\n";
    for (const Entity& e : graph.entities()) {
      check(e.id);
      check(e.name);
      if (e.parent) check(*e.parent);
      out << e.id << '\t' << to_string(e.kind) << '\t' << e.name << '\t'
          << (e.parent ? *e.parent : "") << '\n';
    }
    return;
  }
  for (const Entity& e : graph.entities()) {
    json obj{{"id", e.id}, {"kind", to_string(e.kind)}, {"name", e.name}};
    if (e.parent) obj["parent"] = *e.parent;
    out << obj.dump() << '\n';
  }
}

void write_edges(const DependencyGraph& graph, std::ostream& out, TableFormat format) {
  if (format == TableFormat::Tsv) {
    out << "src\tdst\tkind\n";
    for (const DenseEdge& e : graph.edges()) {
      out << graph.id_of(e.src) << '\t' << graph.id_of(e.dst) << '\t' << to_string(e.kind) << '\n';
    }
    return;
  }
  for (const DenseEdge& e : graph.edges()) {
    json obj{{"src", graph.id_of(e.src)}, {"dst", graph.id_of(e.dst)}, {"kind", to_string(e.kind)}};
    out << obj.dump() << '\n';
  }
}

}  // namespace depnet
