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

#ifndef DEPNET_METRICS_HPP
#define DEPNET_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "depnet/graph.hpp"

namespace depnet {

/// Per-node metric record; one row of metrics.csv.
struct NodeMetrics {
  std::string node;
  std::uint64_t in_degree = 0;
  std::uint64_t out_degree = 0;
  std::uint64_t ego_nodes = 0;  // 1-step ego network on the projection, center included
  std::uint64_t ego_edges = 0;
  double clustering = 0.0;
  double betweenness = 0.0;
  double centrality = 0.0;
};

/// Watts-Strogatz local clustering: edges among neighbors over k(k-1)/2;
/// zero for fewer than two neighbors. Throws UnknownNode.
double local_clustering(const UndirectedGraph& graph, NodeIndex node);

struct BetweennessMode {
  static BetweennessMode exact() { return {}; }
  static BetweennessMode sampled(std::size_t sources, std::uint64_t seed) {
    BetweennessMode m;
    m.sample_sources = sources;
    m.seed = seed;
    return m;
  }

  std::size_t sample_sources = 0;  // 0 = exact (all sources)
  std::uint64_t seed = 0;

  bool is_exact() const { return sample_sources == 0; }
};

/// Shortest-path betweenness over unit edge weights (Brandes accumulation),
/// endpoints excluded, each unordered pair counted once. Sampled mode runs
/// from k sources drawn without replacement and scales by n/k; k = n
/// reproduces the exact values. Per-source passes run in parallel (capped by
/// DEPNET_THREADS). Throws InvalidParameter when a sampled k < 1 is given.
std::vector<double> betweenness(const UndirectedGraph& graph, const BetweennessMode& mode);

/// Damped centrality by power iteration: scores flow from dependers to the
/// things they depend on, so a node is central when many central nodes
/// depend on it. Dangling mass is redistributed uniformly; iteration stops
/// when the L1 change drops below `tolerance`. Scores sum to 1.
/// Throws InvalidParameter unless damping in (0,1) and tolerance > 0.
std::vector<double> centrality(const DependencyGraph& graph, double damping = 0.85,
                               double tolerance = 1e-12);

/// One record per node: degrees from the digraph, ego/clustering/betweenness
/// on the undirected projection, centrality on the digraph.
std::vector<NodeMetrics> compute_node_metrics(const DependencyGraph& graph,
                                              const BetweennessMode& mode = BetweennessMode::exact());

}  // namespace depnet

#endif  // DEPNET_METRICS_HPP
