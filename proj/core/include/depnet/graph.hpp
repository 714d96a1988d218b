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

#ifndef DEPNET_GRAPH_HPP
#define DEPNET_GRAPH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depnet/error.hpp"

namespace depnet {

// Typed directed dependency graph. Edge direction is fixed as
// depender -> dependee: a lemma points at the facts it uses, so a node's
// in-degree counts its users. Every analysis in this library assumes that
// convention.

enum class EntityKind : std::uint8_t { Session, Theory, Fact, Constant, TypeCon, Other };
enum class EdgeKind : std::uint8_t { Imports, Uses, Defines };
enum class Direction : std::uint8_t { In, Out };

inline constexpr std::size_t kEntityKindCount = 6;
inline constexpr std::size_t kEdgeKindCount = 3;

const char* to_string(EntityKind kind);
const char* to_string(EdgeKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

/// Containment coarseness: Session < Theory < everything else. A parent must
/// be strictly coarser than its child (fact -> theory, theory -> session).
int containment_rank(EntityKind kind);

struct Entity {
  std::string id;
  EntityKind kind = EntityKind::Other;
  std::string name;
  std::optional<std::string> parent;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct DepEdge {
  std::string src;
  std::string dst;
  EdgeKind kind = EdgeKind::Uses;

  friend bool operator==(const DepEdge&, const DepEdge&) = default;
};

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = 0xFFFFFFFFu;

/// Edge between dense node indices; the sealed graph's canonical form.
struct DenseEdge {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  EdgeKind kind = EdgeKind::Uses;

  friend bool operator==(const DenseEdge&, const DenseEdge&) = default;
  friend auto operator<=>(const DenseEdge& a, const DenseEdge& b) {
    if (auto c = a.src <=> b.src; c != 0) return c;
    if (auto c = a.dst <=> b.dst; c != 0) return c;
    return static_cast<std::uint8_t>(a.kind) <=> static_cast<std::uint8_t>(b.kind);
  }
};

class DependencyGraph;

/// Weighted undirected companion graph; the substrate for clustering,
/// betweenness and community detection. No self-loops, weights >= 1 when
/// produced by `DependencyGraph::undirected_projection` (weight = number of
/// directed edges collapsed between the pair).
class UndirectedGraph {
 public:
  struct Neighbor {
    NodeIndex node;
    double weight;
  };

  UndirectedGraph() = default;

  /// Builds from explicit pair weights. Duplicate pairs accumulate; self
  /// loops and non-positive weights are rejected (InvalidParameter).
  static UndirectedGraph from_weighted_edges(
      std::size_t node_count, std::span<const std::tuple<NodeIndex, NodeIndex, double>> edges);

  std::size_t node_count() const { return degrees_.size(); }
  std::size_t edge_count() const { return pair_count_; }
  double total_weight() const { return total_weight_; }

  std::span<const Neighbor> neighbors(NodeIndex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(NodeIndex v) const { return degrees_[v]; }

  /// True when {u, v} is an edge.
  bool adjacent(NodeIndex u, NodeIndex v) const;

 private:
  friend class DependencyGraph;

  void build(std::size_t node_count,
             std::vector<std::tuple<NodeIndex, NodeIndex, double>>&& pair_weights);

  std::vector<std::size_t> offsets_;  // node_count + 1
  std::vector<Neighbor> adjacency_;   // sorted per node
  std::vector<double> degrees_;       // weighted degree per node
  std::size_t pair_count_ = 0;
  double total_weight_ = 0.0;
};

/// Immutable typed digraph with dense node indices assigned in lexicographic
/// id order, so any insertion order seals to the same graph. Safe for
/// unlimited concurrent readers.
class DependencyGraph {
 public:
  struct Neighbor {
    NodeIndex node;
    EdgeKind kind;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
  };

  DependencyGraph() = default;

  /// Validates and adopts pre-resolved parts: entities must be sorted by id
  /// with no duplicates, endpoints in range, no self-loops. Duplicate
  /// (src,dst,kind) triples are collapsed. Parents are resolved against the
  /// entity list (DanglingParent on unknown or non-coarser parents).
  static DependencyGraph from_parts(std::vector<Entity> entities, std::vector<DenseEdge> edges);

  std::size_t node_count() const { return entities_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t node_count(EntityKind kind) const {
    return node_kind_counts_[static_cast<std::size_t>(kind)];
  }
  std::size_t edge_count(EdgeKind kind) const {
    return edge_kind_counts_[static_cast<std::size_t>(kind)];
  }

  bool has_node(std::string_view id) const { return find(id).has_value(); }
  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws UnknownNode.
  NodeIndex index_of(std::string_view id) const;

  const Entity& entity(NodeIndex v) const { return entities_[v]; }
  const std::string& id_of(NodeIndex v) const { return entities_[v].id; }
  std::span<const Entity> entities() const { return entities_; }
  /// Parent as a dense index (resolved at seal time), or nothing.
  std::optional<NodeIndex> parent_of(NodeIndex v) const;

  std::size_t degree(NodeIndex v, Direction dir) const;
  std::size_t degree(std::string_view id, Direction dir) const {
    return degree(index_of(id), dir);
  }

  std::span<const Neighbor> out_neighbors(NodeIndex v) const {
    return {out_list_.data() + out_offsets_[v], out_list_.data() + out_offsets_[v + 1]};
  }
  std::span<const Neighbor> in_neighbors(NodeIndex v) const {
    return {in_list_.data() + in_offsets_[v], in_list_.data() + in_offsets_[v + 1]};
  }
  /// All edges in canonical (src, dst, kind) order.
  std::span<const DenseEdge> edges() const { return edges_; }

  /// Nodes and edges restricted to the given kinds; edges survive only when
  /// both endpoints do. Parents that fall outside the selection are cleared.
  /// Throws EmptySelection on an empty kind set.
  DependencyGraph induced_subgraph(std::span<const EntityKind> node_kinds,
                                   std::span<const EdgeKind> edge_kinds) const;

  /// Collapses each unordered pair with >= 1 directed edge (either way) into
  /// one undirected edge weighted by the number of directed edges collapsed.
  UndirectedGraph undirected_projection() const;

  /// Node/edge set equality (ids, kinds, names, parents, edge triples).
  bool operator==(const DependencyGraph& other) const;

 private:
  friend class GraphBuilder;

  void finish(std::vector<Entity>&& entities, std::vector<DenseEdge>&& edges,
              std::vector<NodeIndex>&& parent_index);
  void build_adjacency();

  std::vector<Entity> entities_;          // sorted by id
  std::vector<NodeIndex> parent_index_;   // kNoNode when absent
  std::vector<DenseEdge> edges_;          // sorted, deduplicated
  std::vector<std::size_t> out_offsets_;  // CSR over edges_
  std::vector<Neighbor> out_list_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Neighbor> in_list_;
  std::array<std::size_t, kEntityKindCount> node_kind_counts_{};
  std::array<std::size_t, kEdgeKindCount> edge_kind_counts_{};
};

/// Single-writer accumulation of entities and edges; `seal()` validates and
/// produces the immutable graph. Re-adding an identical entity is a no-op;
/// the same id with different content is a DuplicateId error. Self-loops are
/// rejected immediately; unknown endpoints and dangling parents are
/// aggregated at seal time.
class GraphBuilder {
 public:
  GraphBuilder& add_entity(Entity entity);
  GraphBuilder& add_edge(DepEdge edge);

  std::size_t entity_count() const { return entities_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Consumes the builder. Throws UnknownEndpoint / DanglingParent with the
  /// offending ids listed.
  DependencyGraph seal();

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<Entity> entities_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> by_id_;
  std::vector<DepEdge> edges_;
  bool sealed_ = false;
};

}  // namespace depnet

#endif  // DEPNET_GRAPH_HPP
