// Copyright 2026 The rainbow-dout Authors
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

#pragma once

// Binomial truncation coupling of D_{n,p1} inside D_{d-out}.
//
// Vertex v draws k_v ~ Bin(n-1, p1) and keeps the first k_v of its d ordered
// choices. The choices are a uniformly random ordered sample, so a prefix of
// length k_v is a uniform k_v-subset of [n] \ {v}, which is exactly the
// out-neighbourhood law of D_{n,p1}. This works whenever every k_v <= d.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/stats.hpp"

namespace rainbow {

struct CouplingOutcome {
  ColouredDigraph d_out;
  std::vector<std::uint32_t> counts;  // k_v
  std::optional<ColouredDigraph> inner;
  bool success = false;
  std::uint32_t k_max = 0;
};

inline std::vector<std::uint32_t> sample_binomial_counts(std::uint32_t n, double p1, Rng& rng) {
  std::binomial_distribution<std::uint32_t> bin(n - 1, p1);
  std::vector<std::uint32_t> counts(n);
  for (auto& k : counts) k = bin(rng);
  return counts;
}

/// Keep the first counts[v] arcs of each vertex, in stored order.
inline std::optional<ColouredDigraph> truncate_choices(const ColouredDigraph& ordered,
                                                       const std::vector<std::uint32_t>& counts) {
  const auto lists = ordered.out_lists();
  std::vector<Arc> kept;
  for (Vertex v = 0; v < ordered.n(); ++v) {
    if (counts[v] > lists[v].size()) return std::nullopt;
    kept.insert(kept.end(), lists[v].begin(), lists[v].begin() + counts[v]);
  }
  return ColouredDigraph{ordered.n(), ordered.kappa(), std::move(kept)};
}

/// Couple against a given ordered out-degree-d digraph (fresh D_{d-out} or a
/// shuffled rainbow extraction).
inline CouplingOutcome couple_ordered(ColouredDigraph ordered, double p1, Rng& rng) {
  CouplingOutcome out;
  out.counts = sample_binomial_counts(ordered.n(), p1, rng);
  out.k_max = out.counts.empty() ? 0 : *std::max_element(out.counts.begin(), out.counts.end());
  out.inner = truncate_choices(ordered, out.counts);
  out.success = out.inner.has_value();
  out.d_out = std::move(ordered);
  return out;
}

inline CouplingOutcome couple(std::uint32_t n, std::uint32_t d, double p_target, double eps, Rng& rng) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (n < 2 || d < 1 || d > n - 1) throw std::invalid_argument("couple requires 1 <= d <= n - 1");
  const auto split = split_probability(p_target);
  auto d_out = sample_d_out(n, d, rng);
  return couple_ordered(std::move(d_out), split.p1, rng);
}

/// Target edge probability (2 - eps) d / n of the coupled G_{n,p}.
inline double coupling_target_probability(std::uint32_t n, std::uint32_t d, double eps) {
  return (2.0 - eps) * static_cast<double>(d) / static_cast<double>(n);
}

/// Out-degree used when the harness runs in the large-d regime: the smallest
/// integer at least 20 eps^-2 ln n.
inline std::uint32_t lemma4_regime_d(std::uint32_t n, double eps) {
  return static_cast<std::uint32_t>(std::ceil(20.0 / (eps * eps) * std::log(static_cast<double>(n))));
}

/// Monte Carlo estimate of P(max_v k_v <= d) with a 95% Wilson interval.
inline Proportion chernoff_success_estimate(std::uint32_t n, std::uint32_t d, double p1, std::uint64_t trials,
                                            Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto counts = sample_binomial_counts(n, p1, rng);
    if (*std::max_element(counts.begin(), counts.end()) <= d) ++hits;
  }
  return wilson(hits, trials);
}

}  // namespace rainbow
