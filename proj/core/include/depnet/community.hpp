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

#ifndef DEPNET_COMMUNITY_HPP
#define DEPNET_COMMUNITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "depnet/graph.hpp"

namespace depnet {

/// Node-indexed community assignment with dense ids 0..community_count-1.
struct Partition {
  std::vector<std::uint32_t> assignment;
  std::uint32_t community_count = 0;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Renumbers arbitrary labels to dense ids in order of first occurrence.
Partition normalize_partition(std::span<const std::uint32_t> labels);

/// Newman modularity Q = (1/2W) sum_uv [A_uv - k_u k_v / 2W] delta(c_u, c_v).
/// Q(all-in-one) is exactly 0. Throws EmptyGraph when total weight is 0,
/// IncompletePartition when the assignment does not cover every node.
double modularity(const UndirectedGraph& graph, const Partition& partition);

struct CommunityOptions {
  /// Default: nodes are scanned in index order (deterministic). A seed here
  /// switches the local-move phase to a seeded random scan order.
  std::optional<std::uint64_t> random_scan_seed;
  double min_gain = 1e-9;
};

/// Louvain-style greedy modularity maximization: repeated local-move phases
/// (ties broken toward the smallest community id) followed by graph
/// aggregation, until no move gains at least min_gain. Deterministic with
/// default options; the result never scores below the singleton partition.
/// Throws EmptyGraph when total weight is 0.
Partition detect_communities(const UndirectedGraph& graph, const CommunityOptions& options = {});

/// Adjusted Rand Index in [-1, 1]; 1 iff the partitions agree up to
/// relabeling. Throws NodeSetMismatch when sizes differ.
double compare_partitions(const Partition& a, const Partition& b);

/// Declared grouping read off Entity parent chains: each node maps to its
/// nearest ancestor (or self) of the given kind, or to itself when no such
/// ancestor exists. group_names[c] is the grouping entity's id.
struct DeclaredStructure {
  Partition partition;
  std::vector<std::string> group_names;
};

DeclaredStructure declared_partition(const DependencyGraph& graph, EntityKind level);

struct RefactoringRecommendation {
  std::string entity;
  std::string declared_group;
  std::string suggested_group;
  double confidence = 0.0;  // fraction of the entity's community in the suggested group
};

/// Maps every predicted community to its majority declared group and flags
/// nodes whose declared group disagrees, at confidence >= min_confidence.
/// Sorted by descending confidence, then node id. Throws NodeSetMismatch
/// when partition sizes differ from the graph, InvalidParameter for
/// min_confidence outside (0, 1].
std::vector<RefactoringRecommendation> recommend_refactorings(const DependencyGraph& graph,
                                                              const DeclaredStructure& declared,
                                                              const Partition& predicted,
                                                              double min_confidence);

}  // namespace depnet

#endif  // DEPNET_COMMUNITY_HPP
