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

#include <doctest.h>

#include <algorithm>

#include "depnet/graph.hpp"
#include "depnet/rng.hpp"
#include "oracles.hpp"

using namespace depnet;

namespace {

Entity ent(std::string id, EntityKind kind = EntityKind::Other,
           std::optional<std::string> parent = std::nullopt) {
  return Entity{id, kind, id, std::move(parent)};
}

DepEdge edge(std::string src, std::string dst, EdgeKind kind = EdgeKind::Uses) {
  return DepEdge{std::move(src), std::move(dst), kind};
}

}  // namespace

TEST_CASE("add_entity registers nodes and is idempotent") {
  GraphBuilder b;
  b.add_entity(ent("T1", EntityKind::Theory));
  CHECK(b.entity_count() == 1);
  b.add_entity(ent("T1", EntityKind::Theory));  // identical re-add: no-op
  CHECK(b.entity_count() == 1);
}

TEST_CASE("add_entity rejects same id with different content") {
  GraphBuilder b;
  b.add_entity(Entity{"T1", EntityKind::Theory, "one", std::nullopt});
  try {
    b.add_entity(Entity{"T1", EntityKind::Theory, "two", std::nullopt});
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateId);
  }
}

TEST_CASE("add_edge records edges, rejects self-loops, collapses duplicates") {
  GraphBuilder b;
  b.add_entity(ent("a")).add_entity(ent("b"));
  b.add_edge(edge("a", "b"));
  CHECK(b.edge_count() == 1);

  try {
    b.add_edge(edge("a", "a"));
    FAIL("expected SelfLoop");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfLoop);
  }

  b.add_edge(edge("a", "b", EdgeKind::Uses));  // duplicate triple
  DependencyGraph g = b.seal();
  CHECK(g.edge_count() == 1);
}

TEST_CASE("seal validates and builds an immutable graph") {
  GraphBuilder b;
  b.add_entity(ent("a")).add_entity(ent("b")).add_edge(edge("a", "b"));
  DependencyGraph g = b.seal();
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("seal reports unknown endpoints with the offending ids") {
  GraphBuilder b;
  b.add_entity(ent("a")).add_edge(edge("a", "x"));
  try {
    b.seal();
    FAIL("expected UnknownEndpoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownEndpoint);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
}

TEST_CASE("seal of an empty builder yields the empty graph") {
  GraphBuilder b;
  DependencyGraph g = b.seal();
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
  CHECK(g.undirected_projection().node_count() == 0);
}

TEST_CASE("seal rejects dangling or non-coarser parents") {
  GraphBuilder b;
  b.add_entity(ent("f", EntityKind::Fact, "nope"));
  try {
    b.seal();
    FAIL("expected DanglingParent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DanglingParent);
  }

  // fact -> fact is not strictly coarser
  GraphBuilder b2;
  b2.add_entity(ent("f1", EntityKind::Fact));
  b2.add_entity(ent("f2", EntityKind::Fact, "f1"));
  CHECK_THROWS_AS(b2.seal(), Error);

  // fact -> theory -> session is fine
  GraphBuilder b3;
  b3.add_entity(ent("s", EntityKind::Session));
  b3.add_entity(ent("t", EntityKind::Theory, "s"));
  b3.add_entity(ent("f", EntityKind::Fact, "t"));
  DependencyGraph g = b3.seal();
  CHECK(g.parent_of(g.index_of("f")) == g.index_of("t"));
  CHECK(g.parent_of(g.index_of("t")) == g.index_of("s"));
  CHECK_FALSE(g.parent_of(g.index_of("s")).has_value());
}

TEST_CASE("degree counts incident edges per direction") {
  GraphBuilder b;
  b.add_entity(ent("a")).add_entity(ent("b")).add_entity(ent("c"));
  b.add_edge(edge("a", "b")).add_edge(edge("c", "b"));
  DependencyGraph g = b.seal();
  CHECK(g.degree("b", Direction::In) == 2);
  CHECK(g.degree("b", Direction::Out) == 0);
  CHECK(g.degree("a", Direction::Out) == 1);
  try {
    g.degree("zz", Direction::In);
    FAIL("expected UnknownNode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownNode);
  }
}

TEST_CASE("distinct edge kinds survive duplicate collapse") {
  GraphBuilder b;
  b.add_entity(ent("a")).add_entity(ent("b"));
  b.add_edge(edge("a", "b", EdgeKind::Uses));
  b.add_edge(edge("a", "b", EdgeKind::Defines));
  b.add_edge(edge("a", "b", EdgeKind::Uses));
  DependencyGraph g = b.seal();
  CHECK(g.edge_count() == 2);
  CHECK(g.degree("b", Direction::In) == 2);
  CHECK(g.edge_count(EdgeKind::Uses) == 1);
  CHECK(g.edge_count(EdgeKind::Defines) == 1);
}

TEST_CASE("induced_subgraph selects kinds and drops severed edges") {
  GraphBuilder b;
  b.add_entity(ent("f", EntityKind::Fact)).add_entity(ent("c", EntityKind::Constant));
  b.add_edge(edge("f", "c"));
  DependencyGraph g = b.seal();

  const std::array<EntityKind, 1> facts{EntityKind::Fact};
  const std::array<EdgeKind, 3> all_edges{EdgeKind::Imports, EdgeKind::Uses, EdgeKind::Defines};
  DependencyGraph sub = g.induced_subgraph(facts, all_edges);
  CHECK(sub.node_count() == 1);
  CHECK(sub.edge_count() == 0);

  const std::array<EntityKind, 6> all_kinds{EntityKind::Session,  EntityKind::Theory,
                                            EntityKind::Fact,     EntityKind::Constant,
                                            EntityKind::TypeCon,  EntityKind::Other};
  CHECK(g.induced_subgraph(all_kinds, all_edges) == g);

  try {
    g.induced_subgraph(std::span<const EntityKind>{}, all_edges);
    FAIL("expected EmptySelection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySelection);
  }
}

TEST_CASE("undirected_projection collapses directed pairs into weights") {
  GraphBuilder b;
  b.add_entity(ent("a")).add_entity(ent("b"));
  b.add_edge(edge("a", "b"));
  UndirectedGraph u1 = b.seal().undirected_projection();
  CHECK(u1.edge_count() == 1);
  CHECK(u1.total_weight() == doctest::Approx(1.0));

  GraphBuilder b2;
  b2.add_entity(ent("a")).add_entity(ent("b"));
  b2.add_edge(edge("a", "b")).add_edge(edge("b", "a"));
  UndirectedGraph u2 = b2.seal().undirected_projection();
  CHECK(u2.edge_count() == 1);
  CHECK(u2.total_weight() == doctest::Approx(2.0));
}

TEST_CASE("property: degree sums equal edge count on random builders") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t n = 2 + rng.uniform_below(12);
    DependencyGraph g = testsupport::random_digraph(n, 0.3, rng.next());
    std::size_t in_sum = 0, out_sum = 0;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      in_sum += g.degree(v, Direction::In);
      out_sum += g.degree(v, Direction::Out);
    }
    CHECK(in_sum == g.edge_count());
    CHECK(out_sum == g.edge_count());
    CHECK(g.undirected_projection().total_weight() == doctest::Approx(g.edge_count()));
  }
}

TEST_CASE("property: construction is order-insensitive") {
  const std::vector<Entity> entities = {ent("s", EntityKind::Session),
                                        ent("t", EntityKind::Theory, "s"),
                                        ent("f1", EntityKind::Fact, "t"),
                                        ent("f2", EntityKind::Fact, "t"),
                                        ent("c", EntityKind::Constant, "t")};
  const std::vector<DepEdge> edges = {edge("f1", "c"), edge("f2", "c"), edge("f1", "f2"),
                                      edge("t", "s", EdgeKind::Imports)};

  auto build = [&](std::span<const std::size_t> ent_order,
                   std::span<const std::size_t> edge_order) {
    GraphBuilder b;
    for (std::size_t i : ent_order) b.add_entity(entities[i]);
    for (std::size_t i : edge_order) b.add_edge(edges[i]);
    return b.seal();
  };

  std::vector<std::size_t> eo{0, 1, 2, 3, 4}, go{0, 1, 2, 3};
  DependencyGraph reference = build(eo, go);
  SplitMix64 rng(99);
  for (int round = 0; round < 20; ++round) {
    for (std::size_t i = eo.size(); i > 1; --i) std::swap(eo[i - 1], eo[rng.uniform_below(i)]);
    for (std::size_t i = go.size(); i > 1; --i) std::swap(go[i - 1], go[rng.uniform_below(i)]);
    CHECK(build(eo, go) == reference);
  }
}

TEST_CASE("UndirectedGraph::from_weighted_edges accumulates and validates") {
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges{{0, 1, 1.0}, {1, 0, 2.0}};
  UndirectedGraph g = UndirectedGraph::from_weighted_edges(2, edges);
  CHECK(g.edge_count() == 1);
  CHECK(g.total_weight() == doctest::Approx(3.0));
  CHECK(g.weighted_degree(0) == doctest::Approx(3.0));
  CHECK(g.adjacent(0, 1));

  std::vector<std::tuple<NodeIndex, NodeIndex, double>> loop{{0, 0, 1.0}};
  CHECK_THROWS_AS(UndirectedGraph::from_weighted_edges(1, loop), Error);
}
