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

#ifndef DEPNET_NULL_MODELS_HPP
#define DEPNET_NULL_MODELS_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "depnet/graph.hpp"
#include "depnet/rng.hpp"

namespace depnet {

// Seeded baseline generators. All are pure functions of their parameters and
// seed: the same seed reproduces the same graph or sample bit for bit (the
// generator is SplitMix64 throughout; see rng.hpp).

struct ErdosRenyiSpec {
  std::uint64_t n = 0;
  double p = 0.0;
};

struct PreferentialAttachmentSpec {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
};

struct GenSpec {
  std::variant<ErdosRenyiSpec, PreferentialAttachmentSpec> model;
  std::uint64_t seed = 0;
};

/// Directed G(n, p): every ordered pair (u, v), u != v, is an edge
/// independently with probability p. Nodes are Other-kind with zero-padded
/// ids. Pairs are walked with geometric skips, so cost is O(edges) even for
/// tiny p. Throws InvalidParameter unless n >= 1, p in [0, 1].
DependencyGraph erdos_renyi(std::uint64_t n, double p, std::uint64_t seed);

/// Growth model: m+1 seed nodes in a directed cycle; every later node adds m
/// out-edges to distinct existing targets drawn with probability
/// proportional to (current in-degree + m), the urn updating as edges land.
/// Produces (m+1) + m*(n-m-1) edges and a heavy in-degree tail with exponent
/// 2 + m/m = 3. Throws InvalidParameter unless 1 <= m < n.
DependencyGraph preferential_attachment(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

DependencyGraph generate(const GenSpec& spec);

/// Exact inverse-transform sampler for the discrete power law
/// Pr(x) = x^-gamma / zeta(gamma, xmin), x >= xmin. The CDF is tabulated up
/// to a cutoff covering >= 1 - 1e-9 of the mass (binary search per draw);
/// draws beyond the table resolve exactly through Hurwitz-zeta evaluation.
class PowerLawSampler {
 public:
  /// Throws InvalidParameter unless gamma > 1 and xmin >= 1.
  PowerLawSampler(double gamma, std::uint64_t xmin);

  std::uint64_t draw(SplitMix64& rng) const;

  double gamma() const { return gamma_; }
  std::uint64_t xmin() const { return xmin_; }

 private:
  double gamma_ = 0.0;
  std::uint64_t xmin_ = 1;
  double norm_ = 0.0;         // zeta(gamma, xmin)
  std::vector<double> cdf_;   // cdf_[i] = P(X <= xmin + i)
};

/// n i.i.d. draws from the sampler above. Throws InvalidParameter unless
/// gamma > 1, xmin >= 1, n >= 1.
std::vector<std::uint64_t> power_law_sample(double gamma, std::uint64_t xmin, std::size_t n,
                                            std::uint64_t seed);

}  // namespace depnet

#endif  // DEPNET_NULL_MODELS_HPP
