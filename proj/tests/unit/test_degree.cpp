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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "depnet/degree.hpp"
#include "depnet/null_models.hpp"
#include "depnet/rng.hpp"
#include "oracles.hpp"

using namespace depnet;

namespace {

DependencyGraph chain_star_fixture() {
  // edges {a->b, c->b, b->d}
  GraphBuilder b;
  for (const char* id : {"a", "b", "c", "d"})
    b.add_entity(Entity{id, EntityKind::Other, id, std::nullopt});
  b.add_edge(DepEdge{"a", "b", EdgeKind::Uses});
  b.add_edge(DepEdge{"c", "b", EdgeKind::Uses});
  b.add_edge(DepEdge{"b", "d", EdgeKind::Uses});
  return b.seal();
}

}  // namespace

TEST_CASE("degree_histogram tallies in and out degrees") {
  DependencyGraph g = chain_star_fixture();
  DegreeDistribution in = degree_histogram(g, Direction::In);
  CHECK(in.n == 4);
  CHECK(in.histogram == std::map<std::uint64_t, std::uint64_t>{{0, 2}, {1, 1}, {2, 1}});

  DegreeDistribution out = degree_histogram(g, Direction::Out);
  CHECK(out.histogram == std::map<std::uint64_t, std::uint64_t>{{0, 1}, {1, 3}});

  DependencyGraph empty;
  DegreeDistribution none = degree_histogram(empty, Direction::In);
  CHECK(none.n == 0);
  CHECK(none.histogram.empty());
}

TEST_CASE("degree_histogram filters counted nodes but not degrees") {
  GraphBuilder b;
  b.add_entity(Entity{"t", EntityKind::Theory, "t", std::nullopt});
  b.add_entity(Entity{"f", EntityKind::Fact, "f", "t"});
  b.add_edge(DepEdge{"f", "t", EdgeKind::Uses});
  DependencyGraph g = b.seal();

  const std::array<EntityKind, 1> theories{EntityKind::Theory};
  DegreeDistribution in = degree_histogram(g, Direction::In, theories);
  CHECK(in.n == 1);
  // the theory's in-degree is still computed against the full graph
  CHECK(in.histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}});
}

TEST_CASE("property: histogram mass and first moment match the graph") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DependencyGraph g = testsupport::random_digraph(3 + seed, 0.35, seed * 17 + 1);
    DegreeDistribution in = degree_histogram(g, Direction::In);
    std::uint64_t mass = 0, first_moment = 0;
    for (const auto& [d, c] : in.histogram) {
      mass += c;
      first_moment += d * c;
    }
    CHECK(mass == g.node_count());
    CHECK(first_moment == g.edge_count());
  }
}

TEST_CASE("ccdf is the tail fraction per present degree") {
  DegreeDistribution dist;
  dist.n = 4;
  dist.histogram = {{1, 2}, {2, 1}, {3, 1}};
  auto tail = ccdf(dist);
  REQUIRE(tail.size() == 3);
  CHECK(tail[0] == std::pair<std::uint64_t, double>{1, 1.0});
  CHECK(tail[1] == std::pair<std::uint64_t, double>{2, 0.5});
  CHECK(tail[2] == std::pair<std::uint64_t, double>{3, 0.25});

  DegreeDistribution single;
  single.n = 10;
  single.histogram = {{5, 10}};
  auto one = ccdf(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].second == doctest::Approx(1.0));

  DegreeDistribution empty;
  try {
    ccdf(empty);
    FAIL("expected EmptyDistribution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDistribution);
  }
}

TEST_CASE("property: ccdf starts at 1 and never increases") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto samples = power_law_sample(2.2, 1, 500, seed + 40);
    DegreeDistribution dist;
    dist.n = samples.size();
    for (auto s : samples) ++dist.histogram[s];
    auto tail = ccdf(dist);
    CHECK(tail.front().second == doctest::Approx(1.0));
    for (std::size_t i = 1; i < tail.size(); ++i) CHECK(tail[i].second <= tail[i - 1].second);
  }
}

TEST_CASE("fit_power_law rejects degenerate inputs") {
  std::vector<std::uint64_t> constant(40, 5);
  try {
    fit_power_law(constant, 5);
    FAIL("expected DegenerateTail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTail);
  }

  std::vector<std::uint64_t> below{1, 2, 3};
  try {
    fit_power_law(below, 10);
    FAIL("expected EmptyTail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyTail);
  }

  CHECK_THROWS_AS(fit_power_law(below, 0), Error);
}

TEST_CASE("fit_power_law matches the grid-search oracle on a tiny sample") {
  const std::vector<std::uint64_t> samples{2, 3, 4, 5, 10};
  PowerLawFit fit = fit_power_law(samples, 2);
  const double oracle = testsupport::grid_search_gamma(samples, 2);
  CHECK(fit.gamma == doctest::Approx(oracle).epsilon(0.01));
  CHECK(fit.ks_distance ==
        doctest::Approx(testsupport::ks_oracle(samples, fit.gamma, 2)).epsilon(1e-6));
  CHECK(fit.n_tail == 5);
}

TEST_CASE("fit_power_law recovers the exponent of seeded samples") {
  auto samples = power_law_sample(2.5, 2, 20000, 424242);
  PowerLawFit fit = fit_power_law(samples, 2);
  CHECK(fit.gamma == doctest::Approx(2.5).epsilon(0.03));
  const double oracle = testsupport::grid_search_gamma(samples, 2);
  CHECK(std::abs(fit.gamma - oracle) <= 0.01);
}

TEST_CASE("property: duplicating every sample leaves gamma unchanged") {
  auto samples = power_law_sample(2.2, 1, 3000, 7);
  PowerLawFit base = fit_power_law(samples, 1);
  std::vector<std::uint64_t> doubled;
  for (auto s : samples) {
    doubled.push_back(s);
    doubled.push_back(s);
  }
  PowerLawFit dup = fit_power_law(doubled, 1);
  CHECK(dup.gamma == doctest::Approx(base.gamma).epsilon(1e-6));
}

TEST_CASE("property: far-out samples drag the fitted exponent down") {
  std::vector<std::uint64_t> base{2, 2, 2, 2, 3, 3, 4, 5, 6, 8};
  PowerLawFit before = fit_power_law(base, 2);
  std::vector<std::uint64_t> extended = base;
  extended.push_back(500);
  extended.push_back(900);
  PowerLawFit after = fit_power_law(extended, 2);
  CHECK(after.gamma < before.gamma);
}

TEST_CASE("select_xmin finds the generating cut of a pure power law") {
  auto samples = power_law_sample(2.5, 1, 50000, 2024);
  PowerLawFit fit = select_xmin(samples);
  CHECK((fit.xmin == 1 || fit.xmin == 2));

  // oracle: rerun the fit at every candidate and compare KS choices
  std::vector<std::uint64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  double best_ks = 2.0;
  std::uint64_t best_xmin = 0;
  for (std::uint64_t candidate : sorted) {
    std::size_t tail = 0;
    for (auto s : samples)
      if (s >= candidate) ++tail;
    if (tail < 50) continue;
    try {
      PowerLawFit f = fit_power_law(samples, candidate);
      if (f.ks_distance < best_ks) {
        best_ks = f.ks_distance;
        best_xmin = f.xmin;
      }
    } catch (const Error&) {
    }
  }
  CHECK(fit.xmin == best_xmin);
  CHECK(fit.ks_distance == doctest::Approx(best_ks));
}

TEST_CASE("select_xmin handles the two-distinct-value boundary") {
  std::vector<std::uint64_t> samples{1, 1, 1, 2};
  PowerLawFit fit = select_xmin(samples);
  CHECK(fit.xmin == 1);
  CHECK(fit.n_tail == 4);
}

TEST_CASE("bootstrap_pvalue accepts model data and rejects binomial data") {
  auto model_samples = power_law_sample(2.5, 1, 1000, 99);
  PowerLawFit fit = select_xmin(model_samples);
  double p_model = bootstrap_pvalue(model_samples, fit, 200, 31337);
  CHECK(p_model >= 0.1);

  DependencyGraph er = erdos_renyi(10000, 1e-3, 555);
  std::vector<std::uint64_t> degrees;
  for (NodeIndex v = 0; v < er.node_count(); ++v)
    degrees.push_back(er.degree(v, Direction::In));
  PowerLawFit er_fit = select_xmin(degrees);
  double p_er = bootstrap_pvalue(degrees, er_fit, 200, 31337);
  CHECK(p_er <= 0.05);

  CHECK_THROWS_AS(bootstrap_pvalue(model_samples, fit, 0, 1), Error);
}

TEST_CASE("bootstrap_pvalue is deterministic for a fixed seed") {
  auto samples = power_law_sample(2.3, 1, 400, 5);
  PowerLawFit fit = select_xmin(samples);
  double a = bootstrap_pvalue(samples, fit, 50, 77);
  double b = bootstrap_pvalue(samples, fit, 50, 77);
  CHECK(a == b);
}

TEST_CASE("loglog_slope recovers the exponent of an exact histogram") {
  DegreeDistribution dist;
  for (std::uint64_t d = 2; d <= 100; ++d) {
    auto count = static_cast<std::uint64_t>(
        std::llround(1e6 * std::pow(static_cast<double>(d), -2.5)));
    if (count >= 1) {
      dist.histogram[d] = count;
      dist.n += count;
    }
  }
  LogLogFit fit = loglog_slope(dist, 2);
  CHECK(fit.slope > -2.6);
  CHECK(fit.slope < -2.4);
  CHECK(fit.r_squared >= 0.99);
}

TEST_CASE("loglog_slope needs two points") {
  DegreeDistribution dist;
  dist.histogram = {{3, 10}};
  dist.n = 10;
  try {
    loglog_slope(dist, 1);
    FAIL("expected InsufficientPoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientPoints);
  }
}

TEST_CASE("loglog_slope agrees with a directly computed OLS on sampled data") {
  auto samples = power_law_sample(2.5, 1, 30000, 8);
  DegreeDistribution dist;
  dist.n = samples.size();
  for (auto s : samples) ++dist.histogram[s];
  LogLogFit fit = loglog_slope(dist, 1);
  CHECK(std::abs(fit.slope - (-2.5)) <= 0.3);

  // independent OLS over the same logged points
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (const auto& [d, c] : dist.histogram) {
    if (d < 1) continue;
    const double x = std::log(static_cast<double>(d)), y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(fit.slope == doctest::Approx(slope).epsilon(1e-9));
}
