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

#ifndef DEPNET_DEGREE_HPP
#define DEPNET_DEGREE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "depnet/graph.hpp"

namespace depnet {

struct DegreeDistribution {
  Direction direction = Direction::In;
  std::map<std::uint64_t, std::uint64_t> histogram;  // degree -> node count
  std::uint64_t n = 0;                               // total nodes counted
};

/// Histogram over all nodes' degrees in the given direction.
DegreeDistribution degree_histogram(const DependencyGraph& graph, Direction direction);

/// Same, counting only nodes of the selected kinds. Degrees are still
/// computed on the full graph; the filter only selects which nodes are
/// tallied.
DegreeDistribution degree_histogram(const DependencyGraph& graph, Direction direction,
                                    std::span<const EntityKind> node_kinds);

/// For each present degree d (ascending), the fraction of samples >= d.
/// Non-increasing, starts at 1. Throws EmptyDistribution when n == 0.
std::vector<std::pair<std::uint64_t, double>> ccdf(const DegreeDistribution& dist);

/// Discrete power-law fit Pr(x) = x^-gamma / zeta(gamma, xmin) over the tail
/// x >= xmin.
struct PowerLawFit {
  double gamma = 0.0;        // exponent, in (1, 6]
  std::uint64_t xmin = 1;    // smallest degree the law is assumed to hold from
  double ks_distance = 0.0;  // max |empirical CDF - model CDF| over observed tail values
  std::size_t n_tail = 0;    // samples >= xmin
  double log_likelihood = 0.0;
  std::optional<double> p_value;  // filled by bootstrap_pvalue
  bool at_bracket_edge = false;   // gamma pinned at the search bracket
};

/// Maximum-likelihood exponent for fixed xmin: maximizes
///   L(gamma) = -n_tail * ln zeta(gamma, xmin) - gamma * sum ln x_i
/// by golden-section search over gamma in (1.01, 6.0] to tolerance 1e-4.
/// The Hurwitz zeta is evaluated by direct summation of 1e4 terms plus an
/// integral tail-bound correction. Throws EmptyTail (no samples >= xmin),
/// DegenerateTail (< 2 distinct tail values), InvalidParameter (xmin < 1).
PowerLawFit fit_power_law(std::span<const std::uint64_t> samples, std::uint64_t xmin);

struct SelectXminOptions {
  /// Candidate xmin values are capped at the largest sample value that still
  /// leaves at least this many tail samples; when no candidate qualifies,
  /// every distinct value is considered.
  std::size_t min_tail_samples = 50;
};

/// Fits at every candidate xmin (each distinct sample value, capped per the
/// options) and returns the fit minimizing the KS distance; ties break to
/// the smaller xmin.
PowerLawFit select_xmin(std::span<const std::uint64_t> samples,
                        const SelectXminOptions& options = {});

/// Semi-parametric bootstrap goodness-of-fit. Each replicate redraws
/// samples.size() values -- below-xmin values from the empirical head,
/// tail values from the fitted model -- refits with select_xmin and records
/// the synthetic KS distance; p = fraction of replicates with KS >= the
/// observed one. Deterministic given the seed; replicates run in parallel
/// (capped by DEPNET_THREADS).
double bootstrap_pvalue(std::span<const std::uint64_t> samples, const PowerLawFit& fit,
                        std::size_t n_boot, std::uint64_t seed);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares on (ln degree, ln count) over degrees >= min_degree.
/// The slope estimates -gamma on a pure power-law tail. Throws
/// InsufficientPoints with fewer than two qualifying points.
LogLogFit loglog_slope(const DegreeDistribution& dist, std::uint64_t min_degree);

}  // namespace depnet

#endif  // DEPNET_DEGREE_HPP
