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

#ifndef DEPNET_REPORT_HPP
#define DEPNET_REPORT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "depnet/community.hpp"
#include "depnet/degree.hpp"
#include "depnet/graph.hpp"
#include "depnet/metrics.hpp"
#include "depnet/mining.hpp"

namespace depnet {

struct StatsReport {
  std::array<std::size_t, kEntityKindCount> nodes_by_kind{};
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t entries = 0;  // Session entities
  std::size_t lemmas = 0;   // Fact entities
  std::optional<std::uint64_t> loc;
};

/// Exact counts off the sealed graph; when source_dir is given, loc counts
/// newline-terminated lines over all .thy files beneath it. Throws
/// IoError(path) on unreadable paths.
StatsReport corpus_stats(const DependencyGraph& graph,
                         const std::optional<std::filesystem::path>& source_dir = std::nullopt);

/// Shortest decimal that round-trips the double (to_chars).
std::string format_double(double value);

/// `deg,count` (or `deg,pr` normalized) rows ascending by degree, LF line
/// endings; the exact column layout the in-degree figure data uses. Returns
/// bytes written.
std::size_t emit_degree_csv(const DegreeDistribution& dist, bool normalized, std::ostream& sink);

// Report tables. All writers emit deterministic bytes for identical inputs
// (ordering is pinned by the producing operations; doubles use shortest
// round-trip formatting; LF endings).
void write_metrics_csv(std::span<const NodeMetrics> rows, std::ostream& sink);
void write_recommendations_csv(std::span<const RefactoringRecommendation> rows, std::ostream& sink);
void write_itemsets_csv(std::span<const FrequentItemset> rows, std::ostream& sink);
void write_rules_csv(std::span<const AssociationRule> rows, std::ostream& sink);
void write_communities_csv(const DependencyGraph& graph, const Partition& partition,
                           std::ostream& sink);
std::vector<AssociationRule> read_rules_csv(std::istream& in);

/// JSON record for a fit (gamma, xmin, ks_distance, n_tail, log_likelihood,
/// p_value when present, at_bracket_edge).
std::string fit_to_json(const PowerLawFit& fit);

// Snapshot cache: versioned little-endian binary (magic "DPNTSNAP",
// version 1) holding the sealed graph, so repeat analyses skip re-parsing.
void save_snapshot(const DependencyGraph& graph, const std::filesystem::path& path);
DependencyGraph load_snapshot(const std::filesystem::path& path);

/// Write-temp-then-rename so readers never observe partial files.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace depnet

#endif  // DEPNET_REPORT_HPP
