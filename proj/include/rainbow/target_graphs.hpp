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

// Fixed target graphs H and their densest-subgraph profile e_H(x), the
// maximum number of H-edges spanned by x vertices, together with
// gamma = max_{3 <= x <= n} e_H(x) / (x - 2).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

enum class Family { grid, hypercube, cycle, path, matching, tree, custom };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::grid: return "grid";
    case Family::hypercube: return "hypercube";
    case Family::cycle: return "cycle";
    case Family::path: return "path";
    case Family::matching: return "matching";
    case Family::tree: return "tree";
    case Family::custom: return "custom";
  }
  return "custom";
}

inline Family parse_family(const std::string& s) {
  for (auto f : {Family::grid, Family::hypercube, Family::cycle, Family::path, Family::matching, Family::tree})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown target family: " + s);
}

struct TargetGraph {
  std::string name;
  Family family = Family::custom;
  std::uint32_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // u < v
  std::uint32_t delta = 0;
  std::uint32_t e_total = 0;

  std::vector<std::uint32_t> degrees() const {
    std::vector<std::uint32_t> deg(n, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }
};

inline TargetGraph make_target(std::string name, Family family, std::uint32_t n,
                               std::vector<std::pair<Vertex, Vertex>> edges) {
  TargetGraph h;
  h.name = std::move(name);
  h.family = family;
  h.n = n;
  for (auto& [u, v] : edges) {
    if (u == v || u >= n || v >= n) throw std::invalid_argument("invalid target edge");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("parallel target edges");
  h.edges = std::move(edges);
  h.e_total = static_cast<std::uint32_t>(h.edges.size());
  const auto deg = h.degrees();
  h.delta = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  return h;
}

inline TargetGraph make_grid(std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("grid side must be at least 2");
  std::vector<std::pair<Vertex, Vertex>> e;
  auto id = [m](std::uint32_t r, std::uint32_t c) { return r * m + c; };
  for (std::uint32_t r = 0; r < m; ++r)
    for (std::uint32_t c = 0; c < m; ++c) {
      if (c + 1 < m) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < m) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return make_target("grid" + std::to_string(m) + "x" + std::to_string(m), Family::grid, m * m, std::move(e));
}

inline TargetGraph make_hypercube(std::uint32_t dim) {
  if (dim < 1 || dim > 24) throw std::invalid_argument("hypercube dimension must lie in [1, 24]");
  const std::uint32_t n = 1U << dim;
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t b = 0; b < dim; ++b) {
      const auto w = v ^ (1U << b);
      if (v < w) e.emplace_back(v, w);
    }
  return make_target("Q" + std::to_string(dim), Family::hypercube, n, std::move(e));
}

inline TargetGraph make_cycle(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::uint32_t v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return make_target("C" + std::to_string(n), Family::cycle, n, std::move(e));
}

inline TargetGraph make_path(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("path needs at least 1 vertex");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::uint32_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return make_target("P" + std::to_string(n), Family::path, n, std::move(e));
}

inline TargetGraph make_matching(std::uint32_t n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("perfect matching needs an even, positive vertex count");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::uint32_t v = 0; v < n; v += 2) e.emplace_back(v, v + 1);
  return make_target("M" + std::to_string(n), Family::matching, n, std::move(e));
}

/// Uniform labelled tree on n vertices via Pruefer decoding.
inline TargetGraph random_tree(std::uint32_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("tree needs at least 1 vertex");
  std::vector<std::pair<Vertex, Vertex>> e;
  if (n == 2) e.emplace_back(0, 1);
  if (n > 2) {
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    std::vector<Vertex> code(n - 2);
    for (auto& c : code) c = pick(rng);
    std::vector<std::uint32_t> deg(n, 1);
    for (auto c : code) ++deg[c];
    // Linear-time decoding.
    Vertex ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    Vertex leaf = ptr;
    for (auto c : code) {
      e.emplace_back(leaf, c);
      if (--deg[c] == 1 && c < ptr) {
        leaf = c;
      } else {
        ++ptr;
        while (deg[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    e.emplace_back(leaf, n - 1);
  }
  return make_target("T" + std::to_string(n), Family::tree, n, std::move(e));
}

/// Build by family name; `size` is the side (grid), dimension (hypercube)
/// or vertex count (others).
inline TargetGraph make_family(Family f, std::uint32_t size, Rng& rng) {
  switch (f) {
    case Family::grid: return make_grid(size);
    case Family::hypercube: return make_hypercube(size);
    case Family::cycle: return make_cycle(size);
    case Family::path: return make_path(size);
    case Family::matching: return make_matching(size);
    case Family::tree: return random_tree(size, rng);
    case Family::custom: break;
  }
  throw std::invalid_argument("no generator for custom targets");
}

// ---------------------------------------------------------------------------

struct DensityProfile {
  /// table[x] = e_H(x) for x = 0..n_H; only x >= 3 enters gamma.
  std::vector<std::uint64_t> table;
  double gamma = 0.0;
  std::uint32_t argmax = 0;  // smallest x attaining gamma
};

enum class ProfileMode { automatic, exact, closed_form };

inline constexpr std::uint32_t kExactProfileMaxVertices = 24;

namespace detail {

inline DensityProfile finish_profile(std::vector<std::uint64_t> table) {
  const auto n = static_cast<std::uint32_t>(table.size() - 1);
  if (n < 3) throw std::invalid_argument("gamma needs at least 3 vertices");
  DensityProfile p;
  // Compare ratios exactly: a / b > c / e  <=>  a e > c b.
  std::uint64_t best_num = 0, best_den = 1;
  for (std::uint32_t x = 3; x <= n; ++x) {
    const std::uint64_t num = table[x], den = x - 2;
    if (p.argmax == 0 || num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
      p.argmax = x;
    }
  }
  p.gamma = static_cast<double>(best_num) / static_cast<double>(best_den);
  p.table = std::move(table);
  return p;
}

inline std::uint64_t isqrt_ceil(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while (r * r < v) ++r;
  return r;
}

}  // namespace detail

/// e_H(x) by dynamic programming over all vertex subsets:
/// e(W) = e(W - v) + |N(v) & W| with v the lowest vertex of W.
inline std::vector<std::uint64_t> exact_density_table(const TargetGraph& h) {
  if (h.n > kExactProfileMaxVertices)
    throw std::length_error("exact density profile is capped at 24 vertices");
  const std::uint32_t n = h.n;
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : h.edges) {
    adj[u] |= 1U << v;
    adj[v] |= 1U << u;
  }
  std::vector<std::uint64_t> best(n + 1, 0);
  const std::uint32_t total = 1U << n;
  std::vector<std::uint16_t> edges_in(total, 0);
  for (std::uint32_t s = 1; s < total; ++s) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(s));
    const auto rest = s & (s - 1);
    edges_in[s] = static_cast<std::uint16_t>(edges_in[rest] + std::popcount(adj[v] & rest));
    auto& slot = best[std::popcount(s)];
    slot = std::max<std::uint64_t>(slot, edges_in[s]);
  }
  return best;
}

/// Closed forms for the structured families; nullopt for custom targets.
/// Any tree has a subtree on every x <= n vertices, hence x - 1.
inline std::optional<std::vector<std::uint64_t>> closed_form_density_table(const TargetGraph& h) {
  const std::uint32_t n = h.n;
  std::vector<std::uint64_t> t(n + 1, 0);
  switch (h.family) {
    case Family::cycle:
      for (std::uint32_t x = 1; x <= n; ++x) t[x] = x < n ? x - 1 : n;
      return t;
    case Family::path:
    case Family::tree:
      for (std::uint32_t x = 1; x <= n; ++x) t[x] = x - 1;
      return t;
    case Family::matching:
      for (std::uint32_t x = 0; x <= n; ++x) t[x] = x / 2;
      return t;
    case Family::grid:
      // floor(2x - 2 sqrt(x)) = 2x - ceil(sqrt(4x)); quasi-squares attain
      // it and they fit in the m x m grid for every x <= m^2.
      for (std::uint64_t x = 1; x <= n; ++x) t[x] = 2 * x - detail::isqrt_ceil(4 * x);
      return t;
    case Family::hypercube: {
      // sum_{j < x} popcount(j): initial segments of binary order are optimal.
      std::uint64_t acc = 0;
      for (std::uint32_t x = 1; x <= n; ++x) {
        acc += static_cast<std::uint64_t>(std::popcount(x - 1));
        t[x] = acc;
      }
      return t;
    }
    case Family::custom: break;
  }
  return std::nullopt;
}

inline DensityProfile density_profile(const TargetGraph& h, ProfileMode mode = ProfileMode::automatic) {
  if (mode == ProfileMode::exact || (mode == ProfileMode::automatic && h.n <= kExactProfileMaxVertices))
    return detail::finish_profile(exact_density_table(h));
  auto closed = closed_form_density_table(h);
  if (!closed) throw std::length_error("no closed form for this target and it exceeds the exact cap of 24 vertices");
  return detail::finish_profile(std::move(*closed));
}

}  // namespace rainbow
