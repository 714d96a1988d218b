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

#include "depnet/null_models.hpp"

#include <algorithm>
#include <cmath>

#include "zeta.hpp"

namespace depnet {

namespace {

std::vector<Entity> numbered_entities(std::uint64_t n) {
  // Zero-padded ids keep lexicographic order equal to numeric order, so the
  // generated index space is already canonical.
  std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  std::vector<Entity> entities;
  entities.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    std::string id = "n" + std::string(width - digits.size(), '0') + digits;
    entities.push_back(Entity{id, EntityKind::Other, id, std::nullopt});
  }
  return entities;
}

void check_node_count(std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (n > 0xFFFFFFFEull) throw Error(ErrorCode::InvalidParameter, "n exceeds the node index space");
}

}  // namespace

DependencyGraph erdos_renyi(std::uint64_t n, double p, std::uint64_t seed) {
  check_node_count(n);
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "p must be in [0, 1]");

  std::vector<DenseEdge> edges;
  const std::uint64_t total_pairs = n * (n - 1);
  SplitMix64 rng(seed);

  if (p >= 1.0) {
    edges.reserve(total_pairs);
    for (std::uint64_t u = 0; u < n; ++u)
      for (std::uint64_t v = 0; v < n; ++v)
        if (u != v)
          edges.push_back(DenseEdge{static_cast<NodeIndex>(u), static_cast<NodeIndex>(v),
                                    EdgeKind::Uses});
  } else if (p > 0.0) {
    edges.reserve(static_cast<std::size_t>(static_cast<double>(total_pairs) * p * 1.05) + 16);
    const double log1mp = std::log1p(-p);
    // Walk the linearized ordered-pair index with geometric skips: the gap
    // to the next present edge is Geometric(p).
    std::uint64_t idx = 0;
    while (idx < total_pairs) {
      double u = rng.next_double();
      double skip = std::floor(std::log1p(-u) / log1mp);
      if (skip >= static_cast<double>(total_pairs - idx)) break;  // also catches inf
      idx += static_cast<std::uint64_t>(skip);
      std::uint64_t row = idx / (n - 1);
      std::uint64_t rem = idx % (n - 1);
      std::uint64_t col = rem < row ? rem : rem + 1;  // skip the diagonal
      edges.push_back(DenseEdge{static_cast<NodeIndex>(row), static_cast<NodeIndex>(col),
                                EdgeKind::Uses});
      ++idx;
    }
  }
  return DependencyGraph::from_parts(numbered_entities(n), std::move(edges));
}

DependencyGraph preferential_attachment(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  check_node_count(n);
  if (m < 1 || m >= n) throw Error(ErrorCode::InvalidParameter, "need 1 <= m < n");

  SplitMix64 rng(seed);
  std::vector<DenseEdge> edges;
  edges.reserve((m + 1) + m * (n - m - 1));

  // Attachment urn: m entries per node (initial attractiveness equal to the
  // per-node out-degree) plus one entry per in-edge endpoint, so a uniform
  // draw is proportional to in-degree + m. That smoothing keeps zero-in-degree
  // nodes reachable and pins the tail exponent at 2 + m/m = 3.
  std::vector<NodeIndex> urn;
  urn.reserve(n * m + edges.capacity());

  const std::uint64_t seeds = m + 1;
  for (std::uint64_t i = 0; i < seeds; ++i) {
    NodeIndex target = static_cast<NodeIndex>((i + 1) % seeds);
    edges.push_back(DenseEdge{static_cast<NodeIndex>(i), target, EdgeKind::Uses});
    for (std::uint64_t r = 0; r < m; ++r) urn.push_back(static_cast<NodeIndex>(i));
    urn.push_back(target);
  }

  std::vector<NodeIndex> chosen;
  chosen.reserve(m);
  for (std::uint64_t v = seeds; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      NodeIndex t = urn[rng.uniform_below(urn.size())];
      if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) continue;
      chosen.push_back(t);
      edges.push_back(DenseEdge{static_cast<NodeIndex>(v), t, EdgeKind::Uses});
      urn.push_back(t);
    }
    for (std::uint64_t r = 0; r < m; ++r) urn.push_back(static_cast<NodeIndex>(v));
  }
  return DependencyGraph::from_parts(numbered_entities(n), std::move(edges));
}

DependencyGraph generate(const GenSpec& spec) {
  if (const auto* er = std::get_if<ErdosRenyiSpec>(&spec.model))
    return erdos_renyi(er->n, er->p, spec.seed);
  const auto& pa = std::get<PreferentialAttachmentSpec>(spec.model);
  return preferential_attachment(pa.n, pa.m, spec.seed);
}

PowerLawSampler::PowerLawSampler(double gamma, std::uint64_t xmin) : gamma_(gamma), xmin_(xmin) {
  if (!(gamma > 1.0)) throw Error(ErrorCode::InvalidParameter, "gamma must be > 1");
  if (xmin < 1) throw Error(ErrorCode::InvalidParameter, "xmin must be >= 1");
  norm_ = detail::hurwitz_zeta(gamma_, xmin_);

  constexpr double kCoverage = 1.0 - 1e-9;
  constexpr std::size_t kTableCap = std::size_t{1} << 22;
  double cum = 0.0;
  for (std::uint64_t x = xmin_; cdf_.size() < kTableCap; ++x) {
    cum += detail::int_pow_neg(x, gamma_) / norm_;
    cdf_.push_back(cum);
    if (cum >= kCoverage) break;
  }
}

std::uint64_t PowerLawSampler::draw(SplitMix64& rng) const {
  double u = rng.next_double();
  if (u < cdf_.back()) {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return xmin_ + static_cast<std::uint64_t>(it - cdf_.begin());
  }
  // Beyond the table (< 1e-9 of draws, or heavy tails near gamma = 1):
  // binary-search x on the exact CDF 1 - zeta(gamma, x+1) / zeta(gamma, xmin).
  auto cdf_at = [this](std::uint64_t x) {
    return 1.0 - detail::hurwitz_zeta(gamma_, x + 1) / norm_;
  };
  std::uint64_t lo = xmin_ + cdf_.size();  // first value past the table
  std::uint64_t hi = lo;
  while (cdf_at(hi) < u) {
    std::uint64_t span = hi - xmin_ + 1;
    if (hi > (std::uint64_t{1} << 62)) return hi;  // u within fp round-off of 1
    hi = xmin_ + span * 2;
  }
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (cdf_at(mid) < u)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

std::vector<std::uint64_t> power_law_sample(double gamma, std::uint64_t xmin, std::size_t n,
                                            std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  PowerLawSampler sampler(gamma, xmin);
  SplitMix64 rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.draw(rng));
  return out;
}

}  // namespace depnet
