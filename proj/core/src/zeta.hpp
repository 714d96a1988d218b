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

// Internal numerics shared by the degree-analysis and null-model code.

#ifndef DEPNET_SRC_ZETA_HPP
#define DEPNET_SRC_ZETA_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace depnet::detail {

// ln(k) memoized per thread; k = 0 slot unused. Values beyond the cap fall
// back to std::log.
inline double ln_of(std::uint64_t k) {
  constexpr std::uint64_t kCap = 1u << 21;
  thread_local std::vector<double> table{0.0, 0.0};  // ln(1) = 0
  if (k < kCap) {
    if (k >= table.size()) {
      std::size_t old = table.size();
      std::size_t grown = std::max<std::size_t>(k + 1, old * 2);
      if (grown > kCap) grown = kCap;
      table.resize(grown);
      for (std::size_t j = old; j < grown; ++j) table[j] = std::log(static_cast<double>(j));
    }
    return table[k];
  }
  return std::log(static_cast<double>(k));
}

inline double int_pow_neg(std::uint64_t j, double s) { return std::exp(-s * ln_of(j)); }

/// Hurwitz zeta(s, a) = sum_{k>=0} (a+k)^-s for s > 1, integer a >= 1.
/// Direct summation of 1e4 terms (smallest first) plus the integral tail
/// bound with Euler-Maclaurin corrections; absolute accuracy far below the
/// 1e-8 the exponent search needs.
inline double hurwitz_zeta(double s, std::uint64_t a) {
  constexpr std::uint64_t kTerms = 10000;
  double sum = 0.0;
  for (std::uint64_t k = kTerms; k-- > 0;) sum += int_pow_neg(a + k, s);
  const double m = static_cast<double>(a + kTerms);
  sum += std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s) +
         s * std::pow(m, -s - 1.0) / 12.0;
  return sum;
}

}  // namespace depnet::detail

#endif  // DEPNET_SRC_ZETA_HPP
