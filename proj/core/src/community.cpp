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

#include "depnet/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "depnet/rng.hpp"

namespace depnet {

namespace {

// Working graph for the aggregation levels. Unlike the public
// UndirectedGraph it carries self-loops: self_weight[v] holds twice the
// collapsed intra-community weight so 2W = sum of (self_weight + adjacency)
// stays invariant across levels.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
  std::vector<double> self_weight;
  std::vector<double> degree;  // self_weight + incident adjacency weight
  double two_w = 0.0;

  std::size_t size() const { return adjacency.size(); }
};

LevelGraph level_from(const UndirectedGraph& g) {
  LevelGraph lg;
  lg.adjacency.resize(g.node_count());
  lg.self_weight.assign(g.node_count(), 0.0);
  lg.degree.assign(g.node_count(), 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    for (const auto& nb : g.neighbors(v)) lg.adjacency[v].emplace_back(nb.node, nb.weight);
    lg.degree[v] = g.weighted_degree(v);
    lg.two_w += lg.degree[v];
  }
  return lg;
}

// One local-move phase; returns the number of accepted moves. Assignment
// holds community labels local to this level.
std::size_t local_move_phase(const LevelGraph& g, std::vector<std::uint32_t>& community,
                             std::vector<double>& community_degree,
                             std::span<const std::uint32_t> scan_order, double min_gain) {
  std::size_t moves = 0;
  const double two_w = g.two_w;
  std::unordered_map<std::uint32_t, double> link_weight;  // community -> weight from v
  std::vector<std::pair<std::uint32_t, double>> candidates;

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::uint32_t v : scan_order) {
      const std::uint32_t home = community[v];
      link_weight.clear();
      link_weight[home];  // ensure the home term exists even with no home links
      for (const auto& [u, w] : g.adjacency[v]) link_weight[community[u]] += w;

      const double k_v = g.degree[v];
      const double home_rest = community_degree[home] - k_v;
      const double w_home = link_weight[home];

      candidates.assign(link_weight.begin(), link_weight.end());
      std::sort(candidates.begin(), candidates.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      // Gain of moving v from home to c, with v's own home contribution
      // removed: (w_c - w_home)/W + k_v (home_rest - degree_c) / 2W^2.
      // Scanning candidates in ascending id order and requiring a strict
      // improvement breaks ties toward the smallest community id.
      double best_gain = 0.0;
      std::uint32_t best = home;
      for (const auto& [c, w_c] : candidates) {
        if (c == home) continue;
        const double gain = (w_c - w_home) / (0.5 * two_w) +
                            k_v * (home_rest - community_degree[c]) / (0.5 * two_w * two_w);
        if (gain >= min_gain && gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      if (best != home) {
        community_degree[home] -= k_v;
        community_degree[best] += k_v;
        community[v] = best;
        ++moves;
        improved = true;
      }
    }
  }
  return moves;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::uint32_t>& community,
                     std::uint32_t community_count) {
  LevelGraph agg;
  agg.adjacency.resize(community_count);
  agg.self_weight.assign(community_count, 0.0);
  agg.degree.assign(community_count, 0.0);
  agg.two_w = g.two_w;

  std::vector<std::map<std::uint32_t, double>> links(community_count);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const std::uint32_t cv = community[v];
    agg.self_weight[cv] += g.self_weight[v];
    for (const auto& [u, w] : g.adjacency[v]) {
      const std::uint32_t cu = community[u];
      if (cu == cv)
        agg.self_weight[cv] += w;  // both directions land here => twice the weight
      else
        links[cv][cu] += w;
    }
  }
  for (std::uint32_t c = 0; c < community_count; ++c) {
    agg.degree[c] = agg.self_weight[c];
    for (const auto& [u, w] : links[c]) {
      agg.adjacency[c].emplace_back(u, w);
      agg.degree[c] += w;
    }
  }
  return agg;
}

std::uint32_t renumber(std::vector<std::uint32_t>& labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  for (std::uint32_t& l : labels) {
    auto [it, inserted] = dense.try_emplace(l, static_cast<std::uint32_t>(dense.size()));
    l = it->second;
  }
  return static_cast<std::uint32_t>(dense.size());
}

double comb2(double x) { return x * (x - 1.0) * 0.5; }

}  // namespace

Partition normalize_partition(std::span<const std::uint32_t> labels) {
  Partition p;
  p.assignment.assign(labels.begin(), labels.end());
  p.community_count = renumber(p.assignment);
  return p;
}

double modularity(const UndirectedGraph& graph, const Partition& partition) {
  if (partition.assignment.size() != graph.node_count())
    throw Error(ErrorCode::IncompletePartition,
                "assignment covers " + std::to_string(partition.assignment.size()) + " of " +
                    std::to_string(graph.node_count()) + " nodes");
  const double w = graph.total_weight();
  if (!(w > 0.0)) throw Error(ErrorCode::EmptyGraph, "total edge weight is zero");

  const std::size_t k = partition.community_count;
  std::vector<double> internal(k, 0.0);  // sum over ordered intra pairs of A_uv
  std::vector<double> total(k, 0.0);     // sum of weighted degrees
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    const std::uint32_t c = partition.assignment[v];
    if (c >= k) throw Error(ErrorCode::IncompletePartition, "community id out of range");
    total[c] += graph.weighted_degree(v);
    for (const auto& nb : graph.neighbors(v))
      if (partition.assignment[nb.node] == c) internal[c] += nb.weight;
  }
  const double two_w = 2.0 * w;
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double frac_in = internal[c] / two_w;
    const double frac_tot = total[c] / two_w;
    q += frac_in - frac_tot * frac_tot;
  }
  return q;
}

Partition detect_communities(const UndirectedGraph& graph, const CommunityOptions& options) {
  if (!(graph.total_weight() > 0.0))
    throw Error(ErrorCode::EmptyGraph, "total edge weight is zero");

  const std::size_t n = graph.node_count();
  std::vector<std::uint32_t> node_community(n);
  std::iota(node_community.begin(), node_community.end(), 0u);

  LevelGraph level = level_from(graph);
  // Maps original nodes into the current level's node space.
  std::vector<std::uint32_t> to_level(n);
  std::iota(to_level.begin(), to_level.end(), 0u);

  while (true) {
    std::vector<std::uint32_t> community(level.size());
    std::iota(community.begin(), community.end(), 0u);
    std::vector<double> community_degree = level.degree;

    std::vector<std::uint32_t> scan(level.size());
    std::iota(scan.begin(), scan.end(), 0u);
    if (options.random_scan_seed) {
      SplitMix64 rng(*options.random_scan_seed);
      for (std::size_t i = scan.size(); i > 1; --i)
        std::swap(scan[i - 1], scan[rng.uniform_below(i)]);
    }

    const std::size_t moves =
        local_move_phase(level, community, community_degree, scan, options.min_gain);
    if (moves == 0) break;

    const std::uint32_t count = renumber(community);
    for (std::size_t v = 0; v < n; ++v) to_level[v] = community[to_level[v]];
    if (count == level.size()) break;
    level = aggregate(level, community, count);
  }

  Partition result = normalize_partition(to_level);
  return result;
}

double compare_partitions(const Partition& a, const Partition& b) {
  if (a.assignment.size() != b.assignment.size())
    throw Error(ErrorCode::NodeSetMismatch,
                std::to_string(a.assignment.size()) + " vs " + std::to_string(b.assignment.size()) +
                    " nodes");
  const std::size_t n = a.assignment.size();
  if (n == 0) return 1.0;

  std::unordered_map<std::uint64_t, std::uint64_t> cells;
  std::vector<std::uint64_t> row(a.community_count, 0), col(b.community_count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(a.assignment[i]) << 32) | b.assignment[i];
    ++cells[key];
    ++row[a.assignment[i]];
    ++col[b.assignment[i]];
  }
  double index = 0.0;
  for (const auto& [key, c] : cells) index += comb2(static_cast<double>(c));
  double sum_row = 0.0, sum_col = 0.0;
  for (std::uint64_t r : row) sum_row += comb2(static_cast<double>(r));
  for (std::uint64_t c : col) sum_col += comb2(static_cast<double>(c));
  const double pairs = comb2(static_cast<double>(n));
  const double expected = sum_row * sum_col / pairs;
  const double max_index = 0.5 * (sum_row + sum_col);
  if (std::abs(max_index - expected) < 1e-12) {
    // Both partitions are trivial in the same way (all singletons or all in
    // one): identical by construction.
    return 1.0;
  }
  return (index - expected) / (max_index - expected);
}

DeclaredStructure declared_partition(const DependencyGraph& graph, EntityKind level) {
  DeclaredStructure out;
  const std::size_t n = graph.node_count();
  out.partition.assignment.resize(n);

  std::unordered_map<std::string, std::uint32_t> group_of;
  auto group_id = [&](const std::string& name) {
    auto [it, inserted] = group_of.try_emplace(name, static_cast<std::uint32_t>(out.group_names.size()));
    if (inserted) out.group_names.push_back(name);
    return it->second;
  };

  for (NodeIndex v = 0; v < n; ++v) {
    NodeIndex walk = v;
    std::optional<NodeIndex> found;
    while (true) {
      if (graph.entity(walk).kind == level) {
        found = walk;
        break;
      }
      auto p = graph.parent_of(walk);
      if (!p) break;
      walk = *p;
    }
    out.partition.assignment[v] = group_id(found ? graph.id_of(*found) : graph.id_of(v));
  }
  out.partition.community_count = static_cast<std::uint32_t>(out.group_names.size());
  return out;
}

std::vector<RefactoringRecommendation> recommend_refactorings(const DependencyGraph& graph,
                                                              const DeclaredStructure& declared,
                                                              const Partition& predicted,
                                                              double min_confidence) {
  if (!(min_confidence > 0.0 && min_confidence <= 1.0))
    throw Error(ErrorCode::InvalidParameter, "min_confidence must be in (0, 1]");
  const std::size_t n = graph.node_count();
  if (declared.partition.assignment.size() != n || predicted.assignment.size() != n)
    throw Error(ErrorCode::NodeSetMismatch, "partitions must cover the graph's nodes");

  // Majority declared group per predicted community; deterministic ties by
  // lexicographically smaller group name.
  struct Majority {
    std::uint64_t size = 0;
    std::uint32_t group = 0;
    std::uint64_t group_count = 0;
  };
  std::vector<std::map<std::uint32_t, std::uint64_t>> counts(predicted.community_count);
  std::vector<std::uint64_t> community_size(predicted.community_count, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++counts[predicted.assignment[v]][declared.partition.assignment[v]];
    ++community_size[predicted.assignment[v]];
  }
  std::vector<Majority> majority(predicted.community_count);
  for (std::uint32_t c = 0; c < predicted.community_count; ++c) {
    majority[c].size = community_size[c];
    for (const auto& [group, count] : counts[c]) {
      if (count > majority[c].group_count ||
          (count == majority[c].group_count &&
           declared.group_names[group] < declared.group_names[majority[c].group])) {
        majority[c].group = group;
        majority[c].group_count = count;
      }
    }
  }

  std::vector<RefactoringRecommendation> recs;
  for (NodeIndex v = 0; v < n; ++v) {
    const auto& m = majority[predicted.assignment[v]];
    if (m.size == 0) continue;
    if (declared.partition.assignment[v] == m.group) continue;
    const double confidence = static_cast<double>(m.group_count) / static_cast<double>(m.size);
    if (confidence < min_confidence) continue;
    recs.push_back(RefactoringRecommendation{graph.id_of(v),
                                             declared.group_names[declared.partition.assignment[v]],
                                             declared.group_names[m.group], confidence});
  }
  std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return a.entity < b.entity;
  });
  return recs;
}

}  // namespace depnet
