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

// Randomly coloured random graphs and digraphs, plus the transforms used to
// move between them: orientation coalescing, d-out sampling and per-vertex
// head permutations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rainbow/rng.hpp"

namespace rainbow {

using Vertex = std::uint32_t;
/// Colours live in [1, kappa]. Colour 0 marks an uncoloured arc and is
/// only legal when kappa == 0.
using Colour = std::uint32_t;

inline constexpr Colour kUncoloured = 0;

struct Edge {
  Vertex u;
  Vertex v;
  Colour colour;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Arc {
  Vertex tail;
  Vertex head;
  Colour colour;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

namespace detail {

inline void check_colour(Colour c, std::uint32_t kappa) {
  if (kappa == 0) {
    if (c != kUncoloured) throw std::invalid_argument("coloured arc in an uncoloured graph");
  } else if (c < 1 || c > kappa) {
    throw std::invalid_argument("colour " + std::to_string(c) + " outside [1, " +
                                std::to_string(kappa) + "]");
  }
}

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace detail

/// Undirected edge-coloured simple graph. Edges are stored with u < v in
/// the order they were supplied.
class ColouredGraph {
 public:
  ColouredGraph() = default;

  ColouredGraph(std::uint32_t n, std::uint32_t kappa, std::vector<Edge> edges)
      : n_{n}, kappa_{kappa}, edges_{std::move(edges)} {
    std::vector<std::pair<Vertex, Vertex>> seen;
    seen.reserve(edges_.size());
    for (auto& e : edges_) {
      if (e.u == e.v) throw std::invalid_argument("self-loop in coloured graph");
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
      detail::check_colour(e.colour, kappa_);
      seen.emplace_back(e.u, e.v);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("parallel edges in coloured graph");
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t kappa() const { return kappa_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<Edge> sorted_edges() const {
    auto out = edges_;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const ColouredGraph&, const ColouredGraph&) = default;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t kappa_ = 0;
  std::vector<Edge> edges_;
};

/// Arc-coloured digraph without loops or parallel arcs. Arc order is
/// preserved; for d-out samples it is the per-vertex choice order.
class ColouredDigraph {
 public:
  ColouredDigraph() = default;

  ColouredDigraph(std::uint32_t n, std::uint32_t kappa, std::vector<Arc> arcs)
      : n_{n}, kappa_{kappa}, arcs_{std::move(arcs)} {
    std::vector<std::pair<Vertex, Vertex>> seen;
    seen.reserve(arcs_.size());
    for (const auto& a : arcs_) {
      if (a.tail == a.head) throw std::invalid_argument("self-loop in coloured digraph");
      if (a.tail >= n_ || a.head >= n_) throw std::invalid_argument("arc endpoint out of range");
      detail::check_colour(a.colour, kappa_);
      seen.emplace_back(a.tail, a.head);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("parallel arcs in coloured digraph");
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t kappa() const { return kappa_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::vector<Arc> sorted_arcs() const {
    auto out = arcs_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::uint32_t> out_degrees() const {
    std::vector<std::uint32_t> deg(n_, 0);
    for (const auto& a : arcs_) ++deg[a.tail];
    return deg;
  }

  /// Per-vertex arc lists, each in stored order.
  std::vector<std::vector<Arc>> out_lists() const {
    std::vector<std::vector<Arc>> out(n_);
    for (const auto& a : arcs_) out[a.tail].push_back(a);
    return out;
  }

  friend bool operator==(const ColouredDigraph&, const ColouredDigraph&) = default;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t kappa_ = 0;
  std::vector<Arc> arcs_;
};

/// True iff every arc of `sub` (tail, head and colour) appears in `super`.
inline bool is_subdigraph(const ColouredDigraph& sub, const ColouredDigraph& super) {
  if (sub.n() != super.n()) return false;
  auto big = super.sorted_arcs();
  for (const auto& a : sub.arcs())
    if (!std::binary_search(big.begin(), big.end(), a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Probability split: two independent orientations with probability p1 each
// give an undirected pair with probability 1 - (1 - p1)^2 = p.

struct ProbabilitySplit {
  double p = 0.0;
  double p1 = 0.0;
};

inline ProbabilitySplit split_probability(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("split_probability requires 0 <= p < 1");
  // 1 - sqrt(1 - p) without cancellation for small p.
  const double p1 = -std::expm1(0.5 * std::log1p(-p));
  return {p, p1};
}

// ---------------------------------------------------------------------------
// Sampling.

/// G_{n,p} with i.i.d. uniform colours. One uniform and one colour are drawn
/// for every pair, present or not, so samples with a shared seed are nested
/// in p and agree on colours.
inline ColouredGraph sample_coloured_graph(std::uint32_t n, double p, std::uint32_t kappa, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
  detail::check_probability(p, "p");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Colour> colour(1, kappa);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double x = unit(rng);
      const Colour c = colour(rng);
      if (x < p) edges.push_back({u, v, c});
    }
  }
  return ColouredGraph{n, kappa, std::move(edges)};
}

/// D_{n,p1} with i.i.d. uniform colours; same nesting property as above.
inline ColouredDigraph sample_coloured_digraph(std::uint32_t n, double p1, std::uint32_t kappa,
                                               Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
  detail::check_probability(p1, "p1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Colour> colour(1, kappa);
  std::vector<Arc> arcs;
  for (Vertex t = 0; t < n; ++t) {
    for (Vertex h = 0; h < n; ++h) {
      if (h == t) continue;
      const double x = unit(rng);
      const Colour c = colour(rng);
      if (x < p1) arcs.push_back({t, h, c});
    }
  }
  return ColouredDigraph{n, kappa, std::move(arcs)};
}

/// Forget orientation. A directed 2-cycle becomes one edge whose colour is
/// a fair coin flip between its two arc colours.
inline ColouredGraph coalesce_orientation(const ColouredDigraph& d, Rng& rng) {
  struct Keyed {
    Vertex lo, hi;
    bool forward;  // tail < head
    Colour colour;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(d.arcs().size());
  for (const auto& a : d.arcs()) {
    const bool fwd = a.tail < a.head;
    keyed.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head), fwd, a.colour});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
    return std::tie(x.lo, x.hi, x.forward) < std::tie(y.lo, y.hi, y.forward);
  });
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < keyed.size();) {
    const auto& k = keyed[i];
    if (i + 1 < keyed.size() && keyed[i + 1].lo == k.lo && keyed[i + 1].hi == k.hi) {
      // keyed[i] is the backward arc (hi -> lo), keyed[i+1] the forward one.
      const Colour c = coin(rng) ? keyed[i + 1].colour : k.colour;
      edges.push_back({k.lo, k.hi, c});
      i += 2;
    } else {
      edges.push_back({k.lo, k.hi, k.colour});
      ++i;
    }
  }
  return ColouredGraph{d.n(), d.kappa(), std::move(edges)};
}

/// Uncoloured D_{d-out}: each vertex draws d distinct heads from
/// [n] \ {v}, uniformly without replacement. Arcs are emitted vertex by
/// vertex in choice order.
inline ColouredDigraph sample_d_out(std::uint32_t n, std::uint32_t d, Rng& rng) {
  if (n < 2 || d < 1 || d > n - 1)
    throw std::invalid_argument("sample_d_out requires 1 <= d <= n - 1");
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(n) * d);
  std::unordered_map<std::uint32_t, std::uint32_t> swapped;
  const std::uint32_t candidates = n - 1;
  for (Vertex v = 0; v < n; ++v) {
    swapped.clear();
    auto at = [&](std::uint32_t i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    // Partial Fisher-Yates over candidate slots 0..n-2, slot i -> vertex
    // i (i < v) or i + 1 (i >= v).
    for (std::uint32_t i = 0; i < d; ++i) {
      std::uniform_int_distribution<std::uint32_t> pick(i, candidates - 1);
      const std::uint32_t j = pick(rng);
      const std::uint32_t chosen = at(j);
      swapped[j] = at(i);
      const Vertex head = chosen < v ? chosen : chosen + 1;
      arcs.push_back({v, head, kUncoloured});
    }
  }
  return ColouredDigraph{n, 0, std::move(arcs)};
}

// ---------------------------------------------------------------------------
// Permutation family: for each vertex v an independent bijection of
// [n] \ {v}. Stored as full arrays with v fixed.

class PermutationFamily {
 public:
  static PermutationFamily identity(std::uint32_t n) {
    PermutationFamily f;
    f.forward_.assign(n, std::vector<Vertex>(n));
    for (auto& row : f.forward_) std::iota(row.begin(), row.end(), Vertex{0});
    f.inverse_ = f.forward_;
    return f;
  }

  static PermutationFamily sample(std::uint32_t n, Rng& rng) {
    PermutationFamily f = identity(n);
    std::vector<Vertex> others;
    for (Vertex v = 0; v < n; ++v) {
      others.clear();
      for (Vertex w = 0; w < n; ++w)
        if (w != v) others.push_back(w);
      auto images = others;
      std::shuffle(images.begin(), images.end(), rng);
      for (std::size_t i = 0; i < others.size(); ++i) {
        f.forward_[v][others[i]] = images[i];
        f.inverse_[v][images[i]] = others[i];
      }
    }
    return f;
  }

  std::uint32_t n() const { return static_cast<std::uint32_t>(forward_.size()); }
  Vertex apply(Vertex v, Vertex w) const { return forward_[v][w]; }
  Vertex invert(Vertex v, Vertex w) const { return inverse_[v][w]; }

  bool is_valid() const {
    const auto n = forward_.size();
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<bool> hit(n, false);
      if (forward_[v][v] != v) return false;
      for (std::size_t w = 0; w < n; ++w) {
        const auto img = forward_[v][w];
        if (img >= n || hit[img] || inverse_[v][img] != w) return false;
        hit[img] = true;
      }
    }
    return true;
  }

 private:
  std::vector<std::vector<Vertex>> forward_;
  std::vector<std::vector<Vertex>> inverse_;
};

/// Replace each arc (v, w) by (v, pi_v(w)), or (v, pi_v^{-1}(w)) when
/// `invert` is set. Colours and arc order are kept.
inline ColouredDigraph apply_permutations(const ColouredDigraph& d, const PermutationFamily& f,
                                          bool invert) {
  if (f.n() != d.n()) throw std::invalid_argument("permutation family does not cover the digraph");
  std::vector<Arc> arcs;
  arcs.reserve(d.arcs().size());
  for (const auto& a : d.arcs()) {
    const Vertex head = invert ? f.invert(a.tail, a.head) : f.apply(a.tail, a.head);
    arcs.push_back({a.tail, head, a.colour});
  }
  return ColouredDigraph{d.n(), d.kappa(), std::move(arcs)};
}

}  // namespace rainbow
