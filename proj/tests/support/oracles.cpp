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

#include "oracles.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "depnet/rng.hpp"

namespace testsupport {

using depnet::DenseEdge;
using depnet::DependencyGraph;
using depnet::Entity;
using depnet::EntityKind;
using depnet::NodeIndex;
using depnet::SplitMix64;
using depnet::UndirectedGraph;

double zeta_oracle(double s, std::uint64_t a) {
  const std::uint64_t terms = 200000;
  double sum = 0.0;
  for (std::uint64_t k = terms; k-- > 0;)
    sum += std::pow(static_cast<double>(a + k), -s);
  const double m = static_cast<double>(a + terms);
  sum += std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s);
  return sum;
}

double grid_search_gamma(std::span<const std::uint64_t> samples, std::uint64_t xmin, double step) {
  double sum_log = 0.0;
  std::size_t n_tail = 0;
  for (std::uint64_t x : samples) {
    if (x < xmin) continue;
    sum_log += std::log(static_cast<double>(x));
    ++n_tail;
  }
  double best_gamma = 0.0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double g = 1.01; g <= 6.0 + 1e-12; g += step) {
    const double ll =
        -static_cast<double>(n_tail) * std::log(zeta_oracle(g, xmin)) - g * sum_log;
    if (ll > best_ll) {
      best_ll = ll;
      best_gamma = g;
    }
  }
  return best_gamma;
}

double ks_oracle(std::span<const std::uint64_t> samples, double gamma, std::uint64_t xmin) {
  std::vector<std::uint64_t> tail;
  for (std::uint64_t x : samples)
    if (x >= xmin) tail.push_back(x);
  std::sort(tail.begin(), tail.end());
  const double norm = zeta_oracle(gamma, xmin);
  double ks = 0.0;
  for (std::size_t i = 0; i < tail.size();) {
    std::size_t k = i;
    while (k < tail.size() && tail[k] == tail[i]) ++k;
    const double empirical = static_cast<double>(k) / static_cast<double>(tail.size());
    const double model = 1.0 - zeta_oracle(gamma, tail[i] + 1) / norm;
    ks = std::max(ks, std::abs(empirical - model));
    i = k;
  }
  return ks;
}

std::vector<std::vector<std::uint32_t>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> labels(n, 0);
  // restricted growth strings: labels[0] = 0; labels[i] <= max(labels[0..i-1]) + 1
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t max_used) -> void {
    if (i == n) {
      out.push_back(labels);
      return;
    }
    for (std::uint32_t c = 0; c <= max_used + 1; ++c) {
      labels[i] = c;
      self(self, i + 1, std::max(max_used, c));
    }
  };
  if (n == 0) return out;
  labels[0] = 0;
  rec(rec, 1, 0);
  return out;
}

double modularity_oracle(const UndirectedGraph& g, std::span<const std::uint32_t> labels) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> k(n, 0.0);
  double two_w = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      a[v][nb.node] = nb.weight;
      k[v] += nb.weight;
      two_w += nb.weight;
    }
  }
  double q = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (labels[u] == labels[v]) q += a[u][v] - k[u] * k[v] / two_w;
  return q / two_w;
}

double brute_force_best_modularity(const UndirectedGraph& g) {
  double best = -1.0;
  for (const auto& labels : all_partitions(g.node_count()))
    best = std::max(best, modularity_oracle(g, labels));
  return best;
}

namespace {

void enumerate_paths(const std::vector<std::vector<NodeIndex>>& preds, NodeIndex source,
                     NodeIndex at, std::vector<NodeIndex>& path,
                     std::vector<std::vector<NodeIndex>>& out) {
  if (at == source) {
    out.push_back(path);
    return;
  }
  for (NodeIndex p : preds[at]) {
    path.push_back(p);
    enumerate_paths(preds, source, p, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<double> brute_betweenness(const UndirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> cb(n, 0.0);
  for (NodeIndex s = 0; s < n; ++s) {
    // BFS shortest-path DAG from s
    std::vector<std::int64_t> dist(n, -1);
    std::vector<std::vector<NodeIndex>> preds(n);
    std::vector<NodeIndex> queue{s};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeIndex v = queue[head];
      for (const auto& nb : g.neighbors(v)) {
        if (dist[nb.node] < 0) {
          dist[nb.node] = dist[v] + 1;
          queue.push_back(nb.node);
        }
        if (dist[nb.node] == dist[v] + 1) preds[nb.node].push_back(v);
      }
    }
    for (NodeIndex t = s + 1; t < n; ++t) {
      if (dist[t] < 0) continue;
      std::vector<std::vector<NodeIndex>> paths;
      std::vector<NodeIndex> partial{t};
      enumerate_paths(preds, s, t, partial, paths);
      if (paths.empty()) continue;
      const double share = 1.0 / static_cast<double>(paths.size());
      for (const auto& path : paths)
        for (NodeIndex v : path)
          if (v != s && v != t) cb[v] += share;
    }
  }
  return cb;
}

double brute_clustering(const UndirectedGraph& g, NodeIndex v) {
  std::vector<NodeIndex> nbrs;
  for (const auto& nb : g.neighbors(v)) nbrs.push_back(nb.node);
  if (nbrs.size() < 2) return 0.0;
  std::size_t closed = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (g.adjacent(nbrs[i], nbrs[j])) ++closed;
  const double pairs = static_cast<double>(nbrs.size()) * (nbrs.size() - 1) / 2.0;
  return static_cast<double>(closed) / pairs;
}

std::vector<depnet::FrequentItemset> brute_itemsets(std::span<const depnet::Transaction> txns,
                                                    std::uint64_t min_support) {
  std::set<std::string> universe;
  for (const auto& t : txns)
    for (const auto& item : t.items) universe.insert(item);
  std::vector<std::string> items(universe.begin(), universe.end());
  if (items.size() > 20) throw std::runtime_error("brute_itemsets universe too large");

  std::vector<depnet::FrequentItemset> out;
  const std::uint32_t limit = 1u << items.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask & (1u << i)) subset.push_back(items[i]);
    std::uint64_t support = 0;
    for (const auto& t : txns)
      if (std::includes(t.items.begin(), t.items.end(), subset.begin(), subset.end())) ++support;
    if (support >= min_support) out.push_back({subset, support});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
  });
  return out;
}

std::vector<depnet::AssociationRule> brute_rules(std::span<const depnet::FrequentItemset> itemsets,
                                                 std::span<const depnet::Transaction> txns,
                                                 double min_confidence) {
  auto support_of = [&](const std::vector<std::string>& subset) {
    std::uint64_t support = 0;
    for (const auto& t : txns)
      if (std::includes(t.items.begin(), t.items.end(), subset.begin(), subset.end())) ++support;
    return support;
  };
  std::vector<depnet::AssociationRule> rules;
  for (const auto& set : itemsets) {
    if (set.items.size() < 2) continue;
    const std::uint32_t limit = 1u << set.items.size();
    for (std::uint32_t mask = 1; mask + 1 < limit; ++mask) {
      std::vector<std::string> x, y;
      for (std::size_t i = 0; i < set.items.size(); ++i) {
        if (mask & (1u << i))
          x.push_back(set.items[i]);
        else
          y.push_back(set.items[i]);
      }
      const double confidence =
          static_cast<double>(set.support) / static_cast<double>(support_of(x));
      if (confidence >= min_confidence) rules.push_back({x, y, set.support, confidence});
    }
  }
  std::sort(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support != b.support) return a.support > b.support;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

double chi_square_critical(double right_tail, std::size_t df) {
  // normal quantile via Acklam-style rational approximation (adequate here)
  auto normal_quantile = [](double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
      const double q = std::sqrt(-2 * std::log(p));
      return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - plow) {
      const double q = std::sqrt(-2 * std::log(1 - p));
      return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  };
  const double z = normal_quantile(1.0 - right_tail);
  const double k = static_cast<double>(df);
  const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

double binomial_pmf(std::uint64_t n, double p, std::uint64_t k) {
  if (k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  const double log_choose =
      std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1);
  return std::exp(log_choose + kd * std::log(p) + (nd - kd) * std::log1p(-p));
}

UndirectedGraph random_ugraph(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v)
      if (rng.next_double() < p) edges.emplace_back(u, v, 1.0);
  return UndirectedGraph::from_weighted_edges(n, edges);
}

DependencyGraph random_digraph(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = "v" + std::to_string(100 + i);
    entities.push_back(Entity{id, EntityKind::Other, id, std::nullopt});
  }
  std::vector<DenseEdge> edges;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = 0; v < n; ++v)
      if (u != v && rng.next_double() < p)
        edges.push_back(DenseEdge{u, v, depnet::EdgeKind::Uses});
  return DependencyGraph::from_parts(std::move(entities), std::move(edges));
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto candidate = base / ("depnet_test_" + std::to_string(::getpid()) + "_" +
                             std::to_string(counter.fetch_add(1)) + "_" +
                             std::to_string(attempt));
    std::error_code ec;
    if (std::filesystem::create_directory(candidate, ec)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace testsupport
