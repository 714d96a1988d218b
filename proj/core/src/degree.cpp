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

#include "depnet/degree.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "depnet/null_models.hpp"
#include "depnet/rng.hpp"
#include "parallel.hpp"
#include "zeta.hpp"

namespace depnet {

namespace {

constexpr double kGammaLo = 1.01;
constexpr double kGammaHi = 6.0;
constexpr double kGammaTol = 1e-4;

// Sorted samples plus suffix log-sums, shared by every candidate fit so that
// select_xmin and the bootstrap pay the sort once.
struct TailContext {
  std::vector<std::uint64_t> sorted;
  std::vector<double> suffix_lnsum;  // suffix_lnsum[i] = sum_{j >= i} ln sorted[j]
};

TailContext make_context(std::span<const std::uint64_t> samples) {
  TailContext ctx;
  ctx.sorted.assign(samples.begin(), samples.end());
  std::sort(ctx.sorted.begin(), ctx.sorted.end());
  ctx.suffix_lnsum.assign(ctx.sorted.size() + 1, 0.0);
  for (std::size_t i = ctx.sorted.size(); i-- > 0;) {
    double ln = ctx.sorted[i] > 0 ? detail::ln_of(ctx.sorted[i]) : 0.0;
    ctx.suffix_lnsum[i] = ctx.suffix_lnsum[i + 1] + ln;
  }
  return ctx;
}

double tail_loglik(double gamma, std::uint64_t xmin, std::size_t n_tail, double sum_log) {
  return -static_cast<double>(n_tail) * std::log(detail::hurwitz_zeta(gamma, xmin)) -
         gamma * sum_log;
}

double ks_distance_for(const TailContext& ctx, std::size_t begin, double gamma,
                       std::uint64_t xmin) {
  const std::size_t n = ctx.sorted.size();
  const double n_tail = static_cast<double>(n - begin);
  const double norm = detail::hurwitz_zeta(gamma, xmin);

  std::size_t distinct = 0;
  for (std::size_t i = begin; i < n;) {
    std::size_t k = i;
    while (k < n && ctx.sorted[k] == ctx.sorted[i]) ++k;
    ++distinct;
    i = k;
  }
  const std::uint64_t max_value = ctx.sorted.back();
  // Two exact routes to the model CDF: an incremental prefix sum over
  // [xmin, max] or one zeta evaluation per distinct value. Pick the cheaper.
  const bool prefix_route = (max_value - xmin) <= distinct * 10000;

  double ks = 0.0;
  double running = 0.0;
  std::uint64_t next_term = xmin;
  for (std::size_t i = begin; i < n;) {
    const std::uint64_t x = ctx.sorted[i];
    std::size_t k = i;
    while (k < n && ctx.sorted[k] == x) ++k;
    double model_cdf;
    if (prefix_route) {
      for (; next_term <= x; ++next_term) running += detail::int_pow_neg(next_term, gamma);
      model_cdf = running / norm;
    } else {
      model_cdf = 1.0 - detail::hurwitz_zeta(gamma, x + 1) / norm;
    }
    const double empirical_cdf = static_cast<double>(k - begin) / n_tail;
    ks = std::max(ks, std::abs(empirical_cdf - model_cdf));
    i = k;
  }
  return ks;
}

PowerLawFit fit_tail(const TailContext& ctx, std::uint64_t xmin) {
  if (xmin < 1) throw Error(ErrorCode::InvalidParameter, "xmin must be >= 1");
  const auto begin_it = std::lower_bound(ctx.sorted.begin(), ctx.sorted.end(), xmin);
  const std::size_t begin = static_cast<std::size_t>(begin_it - ctx.sorted.begin());
  const std::size_t n = ctx.sorted.size();
  if (begin == n) throw Error(ErrorCode::EmptyTail, "no samples >= xmin");
  if (ctx.sorted[begin] == ctx.sorted[n - 1])
    throw Error(ErrorCode::DegenerateTail, "tail needs >= 2 distinct values");

  const std::size_t n_tail = n - begin;
  const double sum_log = ctx.suffix_lnsum[begin];
  auto loglik = [&](double g) { return tail_loglik(g, xmin, n_tail, sum_log); };

  // Golden-section search; the discrete power-law log-likelihood is concave
  // in gamma (log-convexity of the zeta in s).
  constexpr double invphi = 0.6180339887498949;
  double a = kGammaLo, b = kGammaHi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = loglik(c);
  double fd = loglik(d);
  while (b - a > kGammaTol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = loglik(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = loglik(d);
    }
  }

  PowerLawFit fit;
  fit.gamma = 0.5 * (a + b);
  fit.xmin = xmin;
  fit.n_tail = n_tail;
  fit.log_likelihood = loglik(fit.gamma);
  fit.at_bracket_edge =
      fit.gamma <= kGammaLo + 5 * kGammaTol || fit.gamma >= kGammaHi - 5 * kGammaTol;
  fit.ks_distance = ks_distance_for(ctx, begin, fit.gamma, xmin);
  return fit;
}

PowerLawFit select_xmin_on(const TailContext& ctx, const SelectXminOptions& options) {
  const std::size_t n = ctx.sorted.size();
  if (n == 0) throw Error(ErrorCode::EmptyTail, "no samples");

  // Distinct positive values with their tail sizes (count of samples >= v).
  std::vector<std::pair<std::uint64_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < n;) {
    std::size_t k = i;
    while (k < n && ctx.sorted[k] == ctx.sorted[i]) ++k;
    if (ctx.sorted[i] >= 1) candidates.emplace_back(ctx.sorted[i], n - i);
    i = k;
  }
  if (candidates.empty()) throw Error(ErrorCode::DegenerateTail, "no positive samples");

  bool any_capped = false;
  for (const auto& [value, tail] : candidates)
    if (tail >= options.min_tail_samples) any_capped = true;

  bool found = false;
  PowerLawFit best;
  for (const auto& [value, tail] : candidates) {
    if (any_capped && tail < options.min_tail_samples) continue;
    try {
      PowerLawFit fit = fit_tail(ctx, value);
      if (!found || fit.ks_distance < best.ks_distance) {
        best = fit;
        found = true;
      }
    } catch (const Error&) {
      // candidates with degenerate tails just drop out
    }
  }
  if (!found) throw Error(ErrorCode::DegenerateTail, "no candidate xmin admits a fit");
  return best;
}

}  // namespace

DegreeDistribution degree_histogram(const DependencyGraph& graph, Direction direction) {
  return degree_histogram(graph, direction, std::span<const EntityKind>{});
}

DegreeDistribution degree_histogram(const DependencyGraph& graph, Direction direction,
                                    std::span<const EntityKind> node_kinds) {
  std::array<bool, kEntityKindCount> keep{};
  if (node_kinds.empty()) {
    keep.fill(true);
  } else {
    for (EntityKind k : node_kinds) keep[static_cast<std::size_t>(k)] = true;
  }
  DegreeDistribution dist;
  dist.direction = direction;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (!keep[static_cast<std::size_t>(graph.entity(v).kind)]) continue;
    ++dist.histogram[graph.degree(v, direction)];
    ++dist.n;
  }
  return dist;
}

std::vector<std::pair<std::uint64_t, double>> ccdf(const DegreeDistribution& dist) {
  if (dist.n == 0) throw Error(ErrorCode::EmptyDistribution, "empty degree distribution");
  std::vector<std::pair<std::uint64_t, double>> out;
  out.reserve(dist.histogram.size());
  std::uint64_t at_or_above = 0;
  for (auto it = dist.histogram.rbegin(); it != dist.histogram.rend(); ++it) {
    at_or_above += it->second;
    out.emplace_back(it->first, static_cast<double>(at_or_above) / static_cast<double>(dist.n));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

PowerLawFit fit_power_law(std::span<const std::uint64_t> samples, std::uint64_t xmin) {
  TailContext ctx = make_context(samples);
  return fit_tail(ctx, xmin);
}

PowerLawFit select_xmin(std::span<const std::uint64_t> samples, const SelectXminOptions& options) {
  TailContext ctx = make_context(samples);
  return select_xmin_on(ctx, options);
}

double bootstrap_pvalue(std::span<const std::uint64_t> samples, const PowerLawFit& fit,
                        std::size_t n_boot, std::uint64_t seed) {
  if (n_boot < 1) throw Error(ErrorCode::InvalidParameter, "n_boot must be >= 1");
  if (samples.empty()) throw Error(ErrorCode::EmptyTail, "no samples");
  if (!(fit.gamma > 1.0) || fit.xmin < 1 || fit.n_tail < 2)
    throw Error(ErrorCode::InvalidParameter, "fit is not valid");

  std::vector<std::uint64_t> head;
  for (std::uint64_t x : samples)
    if (x < fit.xmin) head.push_back(x);
  const double head_frac = static_cast<double>(head.size()) / static_cast<double>(samples.size());
  const PowerLawSampler sampler(fit.gamma, fit.xmin);

  const std::size_t threads = std::min(detail::thread_budget(), n_boot);
  std::atomic<std::size_t> exceed{0};
  detail::run_on_threads(threads, [&](std::size_t t) {
    std::size_t local = 0;
    std::vector<std::uint64_t> synthetic(samples.size());
    for (std::size_t r = t; r < n_boot; r += threads) {
      SplitMix64 rng = SplitMix64::substream(seed, r);
      for (std::size_t i = 0; i < synthetic.size(); ++i) {
        if (rng.next_double() < head_frac)
          synthetic[i] = head[rng.uniform_below(head.size())];
        else
          synthetic[i] = sampler.draw(rng);
      }
      try {
        PowerLawFit refit = select_xmin(synthetic);
        if (refit.ks_distance >= fit.ks_distance) ++local;
      } catch (const Error&) {
        ++local;  // a replicate too degenerate to fit counts against the model
      }
    }
    exceed += local;
  });
  return static_cast<double>(exceed.load()) / static_cast<double>(n_boot);
}

LogLogFit loglog_slope(const DegreeDistribution& dist, std::uint64_t min_degree) {
  std::vector<std::pair<double, double>> points;  // (ln d, ln count)
  for (const auto& [degree, count] : dist.histogram) {
    if (degree < std::max<std::uint64_t>(min_degree, 1) || count < 1) continue;
    points.emplace_back(std::log(static_cast<double>(degree)),
                        std::log(static_cast<double>(count)));
  }
  if (points.size() < 2)
    throw Error(ErrorCode::InsufficientPoints, "need >= 2 qualifying log-log points");

  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::InsufficientPoints, "degenerate abscissas");

  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (const auto& [x, y] : points) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss_res += e * e;
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  fit.r_squared = ss_tot <= 1e-30 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace depnet
