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

#include "depnet/graph.hpp"

#include <algorithm>
#include <tuple>

namespace depnet {

namespace {

std::string join_ids(const std::vector<std::string>& ids, std::size_t limit = 8) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > limit) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

const char* to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Session: return "session";
    case EntityKind::Theory: return "theory";
    case EntityKind::Fact: return "fact";
    case EntityKind::Constant: return "constant";
    case EntityKind::TypeCon: return "type";
    case EntityKind::Other: return "other";
  }
  return "other";
}

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Imports: return "imports";
    case EdgeKind::Uses: return "uses";
    case EdgeKind::Defines: return "defines";
  }
  return "uses";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  if (text == "session") return EntityKind::Session;
  if (text == "theory") return EntityKind::Theory;
  if (text == "fact") return EntityKind::Fact;
  if (text == "constant") return EntityKind::Constant;
  if (text == "type") return EntityKind::TypeCon;
  if (text == "other") return EntityKind::Other;
  return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
  if (text == "imports") return EdgeKind::Imports;
  if (text == "uses") return EdgeKind::Uses;
  if (text == "defines") return EdgeKind::Defines;
  return std::nullopt;
}

int containment_rank(EntityKind kind) {
  switch (kind) {
    case EntityKind::Session: return 0;
    case EntityKind::Theory: return 1;
    default: return 2;
  }
}

// ---------------------------------------------------------------------------
// UndirectedGraph

UndirectedGraph UndirectedGraph::from_weighted_edges(
    std::size_t node_count, std::span<const std::tuple<NodeIndex, NodeIndex, double>> edges) {
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> pairs;
  pairs.reserve(edges.size());
  for (const auto& [u, v, w] : edges) {
    if (u == v) throw Error(ErrorCode::InvalidParameter, "undirected self-loop at node " + std::to_string(u));
    if (u >= node_count || v >= node_count)
      throw Error(ErrorCode::InvalidParameter, "edge endpoint out of range");
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidParameter, "edge weight must be positive");
    pairs.emplace_back(std::min(u, v), std::max(u, v), w);
  }
  UndirectedGraph g;
  g.build(node_count, std::move(pairs));
  return g;
}

void UndirectedGraph::build(std::size_t node_count,
                            std::vector<std::tuple<NodeIndex, NodeIndex, double>>&& pair_weights) {
  std::sort(pair_weights.begin(), pair_weights.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });
  // Accumulate duplicate pairs in place.
  std::size_t w = 0;
  for (std::size_t r = 0; r < pair_weights.size(); ++r) {
    if (w > 0 && std::get<0>(pair_weights[w - 1]) == std::get<0>(pair_weights[r]) &&
        std::get<1>(pair_weights[w - 1]) == std::get<1>(pair_weights[r])) {
      std::get<2>(pair_weights[w - 1]) += std::get<2>(pair_weights[r]);
    } else {
      pair_weights[w++] = pair_weights[r];
    }
  }
  pair_weights.resize(w);
  pair_count_ = w;

  std::vector<std::size_t> counts(node_count, 0);
  total_weight_ = 0.0;
  for (const auto& [u, v, wt] : pair_weights) {
    ++counts[u];
    ++counts[v];
    total_weight_ += wt;
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] = offsets_[i] + counts[i];
  adjacency_.resize(offsets_[node_count]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v, wt] : pair_weights) {
    adjacency_[cursor[u]++] = Neighbor{v, wt};
    adjacency_[cursor[v]++] = Neighbor{u, wt};
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto begin = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto end = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  degrees_.assign(node_count, 0.0);
  for (std::size_t v = 0; v < node_count; ++v) {
    double d = 0.0;
    for (const Neighbor& n : neighbors(static_cast<NodeIndex>(v))) d += n.weight;
    degrees_[v] = d;
  }
}

bool UndirectedGraph::adjacent(NodeIndex u, NodeIndex v) const {
  auto ns = neighbors(u);
  auto it = std::lower_bound(ns.begin(), ns.end(), v,
                             [](const Neighbor& n, NodeIndex x) { return n.node < x; });
  return it != ns.end() && it->node == v;
}

// ---------------------------------------------------------------------------
// DependencyGraph

std::optional<NodeIndex> DependencyGraph::find(std::string_view id) const {
  auto it = std::lower_bound(entities_.begin(), entities_.end(), id,
                             [](const Entity& e, std::string_view v) { return e.id < v; });
  if (it == entities_.end() || it->id != id) return std::nullopt;
  return static_cast<NodeIndex>(it - entities_.begin());
}

NodeIndex DependencyGraph::index_of(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw Error(ErrorCode::UnknownNode, std::string(id));
}

std::optional<NodeIndex> DependencyGraph::parent_of(NodeIndex v) const {
  NodeIndex p = parent_index_[v];
  if (p == kNoNode) return std::nullopt;
  return p;
}

std::size_t DependencyGraph::degree(NodeIndex v, Direction dir) const {
  if (v >= node_count()) throw Error(ErrorCode::UnknownNode, "index " + std::to_string(v));
  return dir == Direction::Out ? out_offsets_[v + 1] - out_offsets_[v]
                               : in_offsets_[v + 1] - in_offsets_[v];
}

DependencyGraph DependencyGraph::from_parts(std::vector<Entity> entities,
                                            std::vector<DenseEdge> edges) {
  for (std::size_t i = 1; i < entities.size(); ++i) {
    if (!(entities[i - 1].id < entities[i].id))
      throw Error(ErrorCode::InvalidParameter,
                  "entities not strictly sorted by id near '" + entities[i].id + "'");
  }
  const auto n = static_cast<NodeIndex>(entities.size());

  std::vector<NodeIndex> parent_index(entities.size(), kNoNode);
  std::vector<std::string> bad_parents;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& e = entities[i];
    if (!e.parent) continue;
    auto it = std::lower_bound(entities.begin(), entities.end(), *e.parent,
                               [](const Entity& a, const std::string& v) { return a.id < v; });
    if (it == entities.end() || it->id != *e.parent ||
        containment_rank(it->kind) >= containment_rank(e.kind)) {
      bad_parents.push_back(e.id + " -> " + *e.parent);
      continue;
    }
    parent_index[i] = static_cast<NodeIndex>(it - entities.begin());
  }
  if (!bad_parents.empty())
    throw Error(ErrorCode::DanglingParent, join_ids(bad_parents));

  for (const DenseEdge& e : edges) {
    if (e.src >= n || e.dst >= n)
      throw Error(ErrorCode::UnknownEndpoint, "edge index out of range");
    if (e.src == e.dst)
      throw Error(ErrorCode::SelfLoop, entities[e.src].id);
  }

  DependencyGraph g;
  g.finish(std::move(entities), std::move(edges), std::move(parent_index));
  return g;
}

void DependencyGraph::finish(std::vector<Entity>&& entities, std::vector<DenseEdge>&& edges,
                             std::vector<NodeIndex>&& parent_index) {
  entities_ = std::move(entities);
  parent_index_ = std::move(parent_index);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  node_kind_counts_.fill(0);
  for (const Entity& e : entities_) ++node_kind_counts_[static_cast<std::size_t>(e.kind)];
  edge_kind_counts_.fill(0);
  for (const DenseEdge& e : edges_) ++edge_kind_counts_[static_cast<std::size_t>(e.kind)];

  build_adjacency();
}

void DependencyGraph::build_adjacency() {
  const std::size_t n = entities_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const DenseEdge& e : edges_) {
    ++out_offsets_[e.src + 1];
    ++in_offsets_[e.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_list_.resize(edges_.size());
  in_list_.resize(edges_.size());
  std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
  for (const DenseEdge& e : edges_) out_list_[cursor[e.src]++] = Neighbor{e.dst, e.kind};
  cursor.assign(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const DenseEdge& e : edges_) in_list_[cursor[e.dst]++] = Neighbor{e.src, e.kind};
  // edges_ is sorted by (src, dst, kind) so out lists are already ordered;
  // in lists need a per-node sort by (src, kind).
  for (std::size_t v = 0; v < n; ++v) {
    auto begin = in_list_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[v]);
    auto end = in_list_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[v + 1]);
    std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) {
      return std::tie(a.node, a.kind) < std::tie(b.node, b.kind);
    });
  }
}

DependencyGraph DependencyGraph::induced_subgraph(std::span<const EntityKind> node_kinds,
                                                  std::span<const EdgeKind> edge_kinds) const {
  if (node_kinds.empty() || edge_kinds.empty())
    throw Error(ErrorCode::EmptySelection, "kind selection must be non-empty");

  std::array<bool, kEntityKindCount> keep_node{};
  for (EntityKind k : node_kinds) keep_node[static_cast<std::size_t>(k)] = true;
  std::array<bool, kEdgeKindCount> keep_edge{};
  for (EdgeKind k : edge_kinds) keep_edge[static_cast<std::size_t>(k)] = true;

  std::vector<NodeIndex> remap(node_count(), kNoNode);
  std::vector<Entity> sub_entities;
  for (NodeIndex v = 0; v < node_count(); ++v) {
    if (!keep_node[static_cast<std::size_t>(entities_[v].kind)]) continue;
    remap[v] = static_cast<NodeIndex>(sub_entities.size());
    sub_entities.push_back(entities_[v]);
  }
  // Parents outside the selection are dropped from the copy.
  for (Entity& e : sub_entities) {
    if (e.parent) {
      auto it = std::lower_bound(sub_entities.begin(), sub_entities.end(), *e.parent,
                                 [](const Entity& a, const std::string& v) { return a.id < v; });
      if (it == sub_entities.end() || it->id != *e.parent) e.parent.reset();
    }
  }
  std::vector<DenseEdge> sub_edges;
  for (const DenseEdge& e : edges_) {
    if (!keep_edge[static_cast<std::size_t>(e.kind)]) continue;
    if (remap[e.src] == kNoNode || remap[e.dst] == kNoNode) continue;
    sub_edges.push_back(DenseEdge{remap[e.src], remap[e.dst], e.kind});
  }
  return from_parts(std::move(sub_entities), std::move(sub_edges));
}

UndirectedGraph DependencyGraph::undirected_projection() const {
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> pairs;
  pairs.reserve(edges_.size());
  for (const DenseEdge& e : edges_) {
    pairs.emplace_back(std::min(e.src, e.dst), std::max(e.src, e.dst), 1.0);
  }
  UndirectedGraph g;
  g.build(node_count(), std::move(pairs));
  return g;
}

bool DependencyGraph::operator==(const DependencyGraph& other) const {
  return entities_ == other.entities_ && edges_ == other.edges_;
}

// ---------------------------------------------------------------------------
// GraphBuilder

GraphBuilder& GraphBuilder::add_entity(Entity entity) {
  if (sealed_) throw Error(ErrorCode::InvalidParameter, "builder already sealed");
  auto it = by_id_.find(std::string_view(entity.id));
  if (it != by_id_.end()) {
    if (entities_[it->second] == entity) return *this;  // idempotent re-add
    throw Error(ErrorCode::DuplicateId, entity.id);
  }
  by_id_.emplace(entity.id, entities_.size());
  entities_.push_back(std::move(entity));
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(DepEdge edge) {
  if (sealed_) throw Error(ErrorCode::InvalidParameter, "builder already sealed");
  if (edge.src == edge.dst) throw Error(ErrorCode::SelfLoop, edge.src);
  edges_.push_back(std::move(edge));
  return *this;
}

DependencyGraph GraphBuilder::seal() {
  if (sealed_) throw Error(ErrorCode::InvalidParameter, "builder already sealed");
  sealed_ = true;

  // Canonical node order: lexicographic id.
  std::vector<std::size_t> order(entities_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return entities_[a].id < entities_[b].id; });
  std::vector<NodeIndex> to_canonical(entities_.size());
  std::vector<Entity> sorted;
  sorted.reserve(entities_.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    to_canonical[order[rank]] = static_cast<NodeIndex>(rank);
    sorted.push_back(std::move(entities_[order[rank]]));
  }

  std::vector<std::string> missing;
  std::vector<DenseEdge> dense;
  dense.reserve(edges_.size());
  for (const DepEdge& e : edges_) {
    auto s = by_id_.find(std::string_view(e.src));
    auto d = by_id_.find(std::string_view(e.dst));
    if (s == by_id_.end()) missing.push_back(e.src);
    if (d == by_id_.end()) missing.push_back(e.dst);
    if (s == by_id_.end() || d == by_id_.end()) continue;
    dense.push_back(DenseEdge{to_canonical[s->second], to_canonical[d->second], e.kind});
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    throw Error(ErrorCode::UnknownEndpoint, join_ids(missing));
  }

  entities_.clear();
  by_id_.clear();
  edges_.clear();
  return DependencyGraph::from_parts(std::move(sorted), std::move(dense));
}

}  // namespace depnet
