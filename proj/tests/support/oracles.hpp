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

// Independent reference implementations used as test oracles. Everything in
// here favors brute force and directness over speed so that it cannot share
// a failure mode with the library code it checks.

#ifndef DEPNET_TESTS_SUPPORT_ORACLES_HPP
#define DEPNET_TESTS_SUPPORT_ORACLES_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "depnet/community.hpp"
#include "depnet/graph.hpp"
#include "depnet/mining.hpp"

namespace testsupport {

// Hurwitz zeta by long direct summation plus a coarse integral bound;
// deliberately a different evaluation scheme from the library's.
double zeta_oracle(double s, std::uint64_t a);

// Exhaustive grid search of the discrete power-law log-likelihood over
// gamma in {1.01, 1.02, ..., 6.00}; returns the maximizing gamma.
double grid_search_gamma(std::span<const std::uint64_t> samples, std::uint64_t xmin,
                         double step = 0.01);

// Model CDF table comparison: max |empirical - model| over the observed
// tail, from first principles.
double ks_oracle(std::span<const std::uint64_t> samples, double gamma, std::uint64_t xmin);

// All set partitions of {0..n-1} as restricted-growth label vectors.
std::vector<std::vector<std::uint32_t>> all_partitions(std::size_t n);

// Modularity straight from the definition: (1/2W) sum over ordered node
// pairs of [A_uv - k_u k_v / 2W] delta(c_u, c_v).
double modularity_oracle(const depnet::UndirectedGraph& g,
                         std::span<const std::uint32_t> labels);

// Best modularity over every partition (n <= ~10).
double brute_force_best_modularity(const depnet::UndirectedGraph& g);

// Betweenness by explicit enumeration of every shortest path of every
// unordered pair; interior nodes share the pair's unit weight.
std::vector<double> brute_betweenness(const depnet::UndirectedGraph& g);

// Closed neighbor-pair counting.
double brute_clustering(const depnet::UndirectedGraph& g, depnet::NodeIndex v);

// Exhaustive subset enumeration over the item universe.
std::vector<depnet::FrequentItemset> brute_itemsets(std::span<const depnet::Transaction> txns,
                                                    std::uint64_t min_support);

// Every antecedent/consequent split of every frequent itemset.
std::vector<depnet::AssociationRule> brute_rules(std::span<const depnet::FrequentItemset> itemsets,
                                                 std::span<const depnet::Transaction> txns,
                                                 double min_confidence);

// Dense Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b);

// Right-tail chi-square critical value via the Wilson-Hilferty cube-root
// normal approximation (fine for df >= 3 at the significances we use).
double chi_square_critical(double right_tail, std::size_t df);

double binomial_pmf(std::uint64_t n, double p, std::uint64_t k);

// Small seeded graphs for property tests.
depnet::UndirectedGraph random_ugraph(std::size_t n, double p, std::uint64_t seed);
depnet::DependencyGraph random_digraph(std::size_t n, double p, std::uint64_t seed);

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport

#endif  // DEPNET_TESTS_SUPPORT_ORACLES_HPP
