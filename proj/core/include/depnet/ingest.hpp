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

#ifndef DEPNET_INGEST_HPP
#define DEPNET_INGEST_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depnet/graph.hpp"

namespace depnet {

// Corpus exports arrive as two tables:
//   nodes.tsv  header `id<TAB>kind<TAB>name<TAB>parent`, kind in
//              {session,theory,fact,constant,type,other}, parent may be empty
//   edges.tsv  header `src<TAB>dst<TAB>kind`, kind in {imports,uses,defines}
// or as JSON-lines files mirroring the same columns (one object per line).
// Encoding is UTF-8; fields must not contain tab or newline. Parsing accepts
// CRLF line endings and trailing spaces.

enum class TableFormat { Tsv, JsonLines };

struct ParseOptions {
  /// Lenient parsing maps unknown entity kinds to Other and skips edge rows
  /// with unknown edge kinds instead of failing.
  bool lenient = false;
};

struct ParseStats {
  std::size_t rows = 0;
  std::size_t skipped_unknown_edge_kind = 0;
};

std::vector<Entity> parse_nodes(std::istream& in, TableFormat format = TableFormat::Tsv,
                                const ParseOptions& options = {}, ParseStats* stats = nullptr);
std::vector<DepEdge> parse_edges(std::istream& in, TableFormat format = TableFormat::Tsv,
                                 const ParseOptions& options = {}, ParseStats* stats = nullptr);

/// Picks Tsv unless the path ends in .jsonl or .ndjson.
TableFormat table_format_for_path(std::string_view path);

/// Name and deduplicated import list of an Isabelle-style theory header:
///   (* comments *) theory <name> imports <name>+ [keywords ...] [abbrevs ...] begin
struct TheoryHeader {
  std::string name;
  std::vector<std::string> imports;

  friend bool operator==(const TheoryHeader&, const TheoryHeader&) = default;
};

/// Parses the header of one theory source. Throws ParseError with the byte
/// offset and expectation on malformed input, MissingBegin when the header
/// never terminates.
TheoryHeader parse_theory_header(std::string_view source);

struct BuildWarnings {
  std::size_t dangling_edges = 0;       // endpoint not in the entity set
  std::size_t self_loop_edges = 0;      // src == dst
  std::size_t dangling_parents = 0;     // parent unknown or not coarser; cleared
  std::size_t duplicate_entities = 0;   // same id, conflicting content; first kept

  std::size_t total() const {
    return dangling_edges + self_loop_edges + dangling_parents + duplicate_entities;
  }
};

struct BuildResult {
  DependencyGraph graph;
  BuildWarnings warnings;
};

/// Populates and seals a graph. Strict mode propagates seal errors; lenient
/// mode drops offending edges, clears bad parents and counts everything in
/// the warnings report so analysis of large real exports can proceed.
BuildResult build_graph(std::span<const Entity> entities, std::span<const DepEdge> edges,
                        bool lenient = false);

// Serialization (canonical order, byte-stable; the round-trip inverse of the
// parsers above).
void write_nodes(const DependencyGraph& graph, std::ostream& out,
                 TableFormat format = TableFormat::Tsv);
void write_edges(const DependencyGraph& graph, std::ostream& out,
                 TableFormat format = TableFormat::Tsv);

}  // namespace depnet

#endif  // DEPNET_INGEST_HPP
