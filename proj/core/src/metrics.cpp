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

#include "depnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "depnet/rng.hpp"
#include "parallel.hpp"

namespace depnet {

namespace {

// Edges among v's neighbors, counted once per unordered pair.
std::uint64_t edges_among_neighbors(const UndirectedGraph& g, NodeIndex v) {
  auto nbrs = g.neighbors(v);
  std::uint64_t twice = 0;
  for (const auto& u : nbrs) {
    auto un = g.neighbors(u.node);
    // two-pointer intersection of sorted neighbor lists
    std::size_t i = 0, j = 0;
    while (i < nbrs.size() && j < un.size()) {
      if (nbrs[i].node < un[j].node)
        ++i;
      else if (nbrs[i].node > un[j].node)
        ++j;
      else {
        ++twice;
        ++i;
        ++j;
      }
    }
  }
  return twice / 2;
}

// One Brandes pass from `source`, accumulating into `centrality_acc`.
void brandes_pass(const UndirectedGraph& g, NodeIndex source, std::vector<double>& centrality_acc,
                  std::vector<std::int64_t>& dist, std::vector<double>& sigma,
                  std::vector<double>& delta, std::vector<std::vector<NodeIndex>>& preds,
                  std::vector<NodeIndex>& order) {
  const std::size_t n = g.node_count();
  dist.assign(n, -1);
  sigma.assign(n, 0.0);
  delta.assign(n, 0.0);
  for (auto& p : preds) p.clear();
  order.clear();

  dist[source] = 0;
  sigma[source] = 1.0;
  std::deque<NodeIndex> queue{source};
  while (!queue.empty()) {
    NodeIndex v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (const auto& nb : g.neighbors(v)) {
      NodeIndex w = nb.node;
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      if (dist[w] == dist[v] + 1) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeIndex w = *it;
    for (NodeIndex v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != source) centrality_acc[w] += delta[w];
  }
}

}  // namespace

double local_clustering(const UndirectedGraph& graph, NodeIndex node) {
  if (node >= graph.node_count())
    throw Error(ErrorCode::UnknownNode, "index " + std::to_string(node));
  const std::size_t k = graph.degree(node);
  if (k < 2) return 0.0;
  const double among = static_cast<double>(edges_among_neighbors(graph, node));
  return 2.0 * among / (static_cast<double>(k) * static_cast<double>(k - 1));
}

std::vector<double> betweenness(const UndirectedGraph& graph, const BetweennessMode& mode) {
  const std::size_t n = graph.node_count();
  std::vector<NodeIndex> sources;
  double scale = 1.0;
  if (mode.is_exact()) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), NodeIndex{0});
  } else {
    if (mode.sample_sources < 1)
      throw Error(ErrorCode::InvalidParameter, "sampled betweenness needs k >= 1");
    const std::size_t k = std::min(mode.sample_sources, n);
    // k distinct sources by partial Fisher-Yates
    std::vector<NodeIndex> pool(n);
    std::iota(pool.begin(), pool.end(), NodeIndex{0});
    SplitMix64 rng(mode.seed);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    // Source order does not affect the estimator; sorting makes accumulation
    // order (and thus the floating-point result) match Exact when k = n.
    std::sort(pool.begin(), pool.end());
    sources = std::move(pool);
    scale = static_cast<double>(n) / static_cast<double>(k);
  }

  const std::size_t threads = std::max<std::size_t>(
      1, std::min(detail::thread_budget(), sources.empty() ? 1 : sources.size()));
  std::vector<std::vector<double>> partial(threads, std::vector<double>(n, 0.0));
  detail::run_on_threads(threads, [&](std::size_t t) {
    std::vector<std::int64_t> dist;
    std::vector<double> sigma, delta;
    std::vector<std::vector<NodeIndex>> preds(n);
    std::vector<NodeIndex> order;
    order.reserve(n);
    for (std::size_t i = t; i < sources.size(); i += threads)
      brandes_pass(graph, sources[i], partial[t], dist, sigma, delta, preds, order);
  });

  std::vector<double> out(n, 0.0);
  for (std::size_t t = 0; t < threads; ++t)
    for (std::size_t v = 0; v < n; ++v) out[v] += partial[t][v];
  // Each unordered pair was accumulated from both endpoints' passes in exact
  // mode; halving restores per-pair counting (sampled mode scales the same
  // estimator).
  for (double& v : out) v *= 0.5 * scale;
  return out;
}

std::vector<double> centrality(const DependencyGraph& graph, double damping, double tolerance) {
  if (!(damping > 0.0 && damping < 1.0))
    throw Error(ErrorCode::InvalidParameter, "damping must be in (0, 1)");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be > 0");

  const std::size_t n = graph.node_count();
  if (n == 0) return {};
  std::vector<double> score(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  while (true) {
    double dangling = 0.0;
    for (NodeIndex v = 0; v < n; ++v)
      if (graph.degree(v, Direction::Out) == 0) dangling += score[v];

    const double base = (1.0 - damping) / static_cast<double>(n) +
                        damping * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (NodeIndex u = 0; u < n; ++u) {
      auto outs = graph.out_neighbors(u);
      if (outs.empty()) continue;
      const double share = damping * score[u] / static_cast<double>(outs.size());
      for (const auto& nb : outs) next[nb.node] += share;
    }
    // keep the mass pinned at exactly 1
    double sum = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& x : next) x /= sum;

    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - score[v]);
    score.swap(next);
    if (change < tolerance) break;
  }
  return score;
}

std::vector<NodeMetrics> compute_node_metrics(const DependencyGraph& graph,
                                              const BetweennessMode& mode) {
  const std::size_t n = graph.node_count();
  UndirectedGraph projection = graph.undirected_projection();
  std::vector<double> btw = betweenness(projection, mode);
  std::vector<double> cen = centrality(graph);

  std::vector<NodeMetrics> rows;
  rows.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    NodeMetrics m;
    m.node = graph.id_of(v);
    m.in_degree = graph.degree(v, Direction::In);
    m.out_degree = graph.degree(v, Direction::Out);
    const std::uint64_t k = projection.degree(v);
    m.ego_nodes = k + 1;
    m.ego_edges = k + edges_among_neighbors(projection, v);
    m.clustering = local_clustering(projection, v);
    m.betweenness = btw[v];
    m.centrality = cen[v];
    rows.push_back(std::move(m));
  }
  return rows;
}

}  // namespace depnet
