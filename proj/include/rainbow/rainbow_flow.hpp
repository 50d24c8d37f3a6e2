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

// Rainbow d-out extraction by max-flow.
//
// The network has a source, one node per colour, one node per vertex and a
// sink. source -> colour has capacity 1, colour x -> vertex v exists when v
// is the tail of some arc coloured x, and vertex -> sink has capacity d. A
// flow of value d*n assigns d distinct colours to every vertex with no colour
// used twice, which is exactly a rainbow d-out subdigraph.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

using Capacity = std::int64_t;

enum class FlowArcKind : std::uint8_t { source, middle, sink };

struct FlowArc {
  std::uint32_t from;
  std::uint32_t to;
  Capacity capacity;
  FlowArcKind kind;
};

/// Node layout: 0 = source, 1..kappa = colours, kappa+1..kappa+n = vertices,
/// kappa+n+1 = sink.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  FlowNetwork(std::uint32_t n, std::uint32_t kappa, std::uint32_t d) : n_{n}, kappa_{kappa}, d_{d} {}

  std::uint32_t n() const { return n_; }
  std::uint32_t kappa() const { return kappa_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t node_count() const { return kappa_ + n_ + 2; }
  std::uint32_t source() const { return 0; }
  std::uint32_t sink() const { return kappa_ + n_ + 1; }
  std::uint32_t colour_node(Colour c) const { return c; }
  std::uint32_t vertex_node(Vertex v) const { return kappa_ + 1 + v; }
  bool is_colour_node(std::uint32_t x) const { return x >= 1 && x <= kappa_; }
  Vertex vertex_of(std::uint32_t x) const { return x - kappa_ - 1; }

  /// Stand-in for infinite capacity. No flow can exceed d*n.
  Capacity unbounded() const { return static_cast<Capacity>(d_) * n_; }

  const std::vector<FlowArc>& arcs() const { return arcs_; }
  std::size_t middle_arc_count() const {
    return static_cast<std::size_t>(
        std::count_if(arcs_.begin(), arcs_.end(), [](const FlowArc& a) { return a.kind == FlowArcKind::middle; }));
  }

  void add_arc(std::uint32_t from, std::uint32_t to, Capacity cap, FlowArcKind kind) {
    arcs_.push_back({from, to, cap, kind});
  }

 private:
  std::uint32_t n_ = 0;
  std::uint32_t kappa_ = 0;
  std::uint32_t d_ = 0;
  std::vector<FlowArc> arcs_;
};

/// Arc order: source arcs by colour, middle arcs by (colour, vertex), sink
/// arcs by vertex.
inline FlowNetwork build_network(const ColouredDigraph& digraph, std::uint32_t d) {
  if (d < 1) throw std::invalid_argument("out-degree target d must be at least 1");
  if (digraph.kappa() == 0) throw std::invalid_argument("flow network needs a coloured digraph");
  FlowNetwork net{digraph.n(), digraph.kappa(), d};
  for (Colour c = 1; c <= digraph.kappa(); ++c) net.add_arc(net.source(), net.colour_node(c), 1, FlowArcKind::source);
  std::vector<std::pair<Colour, Vertex>> pairs;
  pairs.reserve(digraph.arcs().size());
  for (const auto& a : digraph.arcs()) pairs.emplace_back(a.colour, a.tail);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [c, v] : pairs)
    net.add_arc(net.colour_node(c), net.vertex_node(v), net.unbounded(), FlowArcKind::middle);
  for (Vertex v = 0; v < digraph.n(); ++v) net.add_arc(net.vertex_node(v), net.sink(), d, FlowArcKind::sink);
  return net;
}

struct FlowResult {
  Capacity value = 0;
  /// Flow on each arc of FlowNetwork::arcs(), same indexing.
  std::vector<Capacity> flow;
  /// Nodes reachable from the source in the final residual graph; this is
  /// the source side of a minimum cut.
  std::vector<bool> source_side;
};

namespace detail {

// Dinic's algorithm on integer capacities.
class Dinic {
 public:
  explicit Dinic(std::uint32_t nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  std::size_t add_edge(std::uint32_t from, std::uint32_t to, Capacity cap) {
    const std::size_t id = to_.size();
    push(from, to, cap);
    push(to, from, 0);
    return id;
  }

  Capacity run(std::uint32_t s, std::uint32_t t) {
    Capacity total = 0;
    while (bfs(s, t)) {
      std::copy(head_.begin(), head_.end(), cursor_.begin());
      while (Capacity pushed = dfs(s, t, std::numeric_limits<Capacity>::max())) total += pushed;
    }
    return total;
  }

  Capacity flow_on(std::size_t id) const { return cap_[id ^ 1]; }

  std::vector<bool> reachable(std::uint32_t s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<std::uint32_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = true;
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  void push(std::uint32_t from, std::uint32_t to, Capacity cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size() - 1);
  }

  bool bfs(std::uint32_t s, std::uint32_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::uint32_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          q.push(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Recursion depth is bounded by the number of BFS levels.
  Capacity dfs(std::uint32_t u, std::uint32_t t, Capacity limit) {
    if (u == t) return limit;
    for (int& e = cursor_[u]; e != -1; e = next_[e]) {
      const auto v = to_[e];
      if (cap_[e] > 0 && level_[v] == level_[u] + 1) {
        if (Capacity got = dfs(v, t, std::min(limit, cap_[e]))) {
          cap_[e] -= got;
          cap_[e ^ 1] += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> next_;
  std::vector<std::uint32_t> to_;
  std::vector<Capacity> cap_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

}  // namespace detail

inline FlowResult max_flow(const FlowNetwork& net) {
  detail::Dinic dinic{net.node_count()};
  std::vector<std::size_t> ids;
  ids.reserve(net.arcs().size());
  for (const auto& a : net.arcs()) ids.push_back(dinic.add_edge(a.from, a.to, a.capacity));
  FlowResult out;
  out.value = dinic.run(net.source(), net.sink());
  out.flow.reserve(ids.size());
  for (auto id : ids) out.flow.push_back(dinic.flow_on(id));
  out.source_side = dinic.reachable(net.source());
  return out;
}

// ---------------------------------------------------------------------------
// Hall-type cut condition: kappa - |S| + d |N(S)| >= d n for every colour
// set S, where N(S) is the set of tails of arcs coloured in S.

struct HallWitness {
  std::vector<Colour> colours;        // S, ascending
  std::vector<Vertex> neighbourhood;  // N(S), ascending
  std::int64_t deficiency = 0;        // d n - (kappa - |S| + d |N(S)|)
};

struct HallCheck {
  bool holds = true;
  std::optional<HallWitness> witness;
};

inline constexpr std::uint32_t kHallBruteForceMaxColours = 22;

inline std::int64_t hall_deficiency(std::uint32_t n, std::uint32_t kappa, std::uint32_t d, std::size_t s_size,
                                    std::size_t neighbourhood_size) {
  return static_cast<std::int64_t>(d) * n -
         (static_cast<std::int64_t>(kappa) - static_cast<std::int64_t>(s_size) +
          static_cast<std::int64_t>(d) * static_cast<std::int64_t>(neighbourhood_size));
}

/// N(S) for an explicit colour set.
inline std::vector<Vertex> colour_neighbourhood(const ColouredDigraph& digraph, const std::vector<Colour>& colours) {
  std::vector<bool> in_s(digraph.kappa() + 1, false);
  for (auto c : colours) in_s.at(c) = true;
  std::vector<bool> hit(digraph.n(), false);
  for (const auto& a : digraph.arcs())
    if (in_s[a.colour]) hit[a.tail] = true;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < digraph.n(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

/// Exhaustive check over all 2^kappa colour sets. The returned witness has
/// maximum deficiency; ties go to smaller |S|, then lexicographically
/// smaller S.
inline HallCheck check_hall_bruteforce(const ColouredDigraph& digraph, std::uint32_t d) {
  const std::uint32_t kappa = digraph.kappa();
  if (kappa > kHallBruteForceMaxColours)
    throw std::length_error("check_hall_bruteforce: kappa exceeds the enumeration cap of 22");
  const std::uint32_t n = digraph.n();
  const std::size_t words = (n + 63) / 64;

  std::vector<std::vector<std::uint64_t>> tails(kappa + 1, std::vector<std::uint64_t>(words, 0));
  for (const auto& a : digraph.arcs()) tails[a.colour][a.tail / 64] |= std::uint64_t{1} << (a.tail % 64);

  struct Best {
    std::int64_t deficiency;
    std::size_t size;
    std::vector<Colour> colours;
    std::vector<std::uint64_t> mask;
  };
  std::optional<Best> best;

  // Depth-first over sorted colour sequences visits S in lexicographic order.
  std::vector<Colour> current;
  std::vector<std::vector<std::uint64_t>> union_at(kappa + 1, std::vector<std::uint64_t>(words, 0));
  auto visit = [&](auto&& self, Colour next, std::size_t depth) -> void {
    const auto& mask = union_at[depth];
    std::size_t covered = 0;
    for (auto w : mask) covered += static_cast<std::size_t>(std::popcount(w));
    const auto def = hall_deficiency(n, kappa, d, current.size(), covered);
    if (!best || def > best->deficiency || (def == best->deficiency && current.size() < best->size))
      best = Best{def, current.size(), current, mask};
    for (Colour c = next; c <= kappa; ++c) {
      auto& child = union_at[depth + 1];
      for (std::size_t w = 0; w < words; ++w) child[w] = mask[w] | tails[c][w];
      current.push_back(c);
      self(self, c + 1, depth + 1);
      current.pop_back();
    }
  };
  visit(visit, 1, 0);

  HallCheck out;
  if (best->deficiency > 0) {
    out.holds = false;
    HallWitness w;
    w.colours = best->colours;
    for (Vertex v = 0; v < n; ++v)
      if ((best->mask[v / 64] >> (v % 64)) & 1U) w.neighbourhood.push_back(v);
    w.deficiency = best->deficiency;
    out.witness = std::move(w);
  }
  return out;
}

/// Witness read off a minimum cut: S = colours on the source side. Valid
/// for any kappa; deficiency equals d n minus the max-flow value.
inline std::optional<HallWitness> min_cut_witness(const ColouredDigraph& digraph, const FlowNetwork& net,
                                                  const FlowResult& flow) {
  if (flow.value >= net.unbounded()) return std::nullopt;
  HallWitness w;
  for (Colour c = 1; c <= net.kappa(); ++c)
    if (flow.source_side[net.colour_node(c)]) w.colours.push_back(c);
  w.neighbourhood = colour_neighbourhood(digraph, w.colours);
  w.deficiency = hall_deficiency(net.n(), net.kappa(), net.d(), w.colours.size(), w.neighbourhood.size());
  return w;
}

// ---------------------------------------------------------------------------
// Extraction.

/// assignment[v] lists the d (colour, head) pairs chosen for vertex v,
/// colours ascending.
using ColourAssignment = std::vector<std::vector<std::pair<Colour, Vertex>>>;

struct RainbowDOut {
  ColouredDigraph digraph;
  std::uint32_t d = 0;
};

struct Extraction {
  ColourAssignment assignment;
  RainbowDOut rainbow;
  Capacity flow_value = 0;
};

/// Checks out-degree d everywhere, pairwise distinct colours, and
/// containment in `source`.
inline bool is_rainbow_d_out(const RainbowDOut& r, const ColouredDigraph& source) {
  for (auto deg : r.digraph.out_degrees())
    if (deg != r.d) return false;
  std::vector<Colour> colours;
  for (const auto& a : r.digraph.arcs()) colours.push_back(a.colour);
  std::sort(colours.begin(), colours.end());
  if (std::adjacent_find(colours.begin(), colours.end()) != colours.end()) return false;
  return is_subdigraph(r.digraph, source);
}

namespace detail {

inline Extraction decompose(const ColouredDigraph& digraph, const FlowNetwork& net, const FlowResult& flow) {
  // Smallest head carrying colour x out of v.
  std::map<std::pair<Vertex, Colour>, Vertex> smallest_head;
  for (const auto& a : digraph.arcs()) {
    auto [it, fresh] = smallest_head.try_emplace({a.tail, a.colour}, a.head);
    if (!fresh) it->second = std::min(it->second, a.head);
  }
  Extraction out;
  out.flow_value = flow.value;
  out.assignment.assign(net.n(), {});
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    const auto& fa = net.arcs()[i];
    if (fa.kind != FlowArcKind::middle || flow.flow[i] == 0) continue;
    // Source arcs have capacity 1, so a middle arc carries at most 1 unit:
    // each unit is one source-colour-vertex-sink path.
    const Colour c = fa.from;
    const Vertex v = net.vertex_of(fa.to);
    out.assignment[v].emplace_back(c, smallest_head.at({v, c}));
  }
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < net.n(); ++v) {
    auto& row = out.assignment[v];
    std::sort(row.begin(), row.end());
    for (const auto& [c, w] : row) arcs.push_back({v, w, c});
  }
  out.rainbow = RainbowDOut{ColouredDigraph{net.n(), net.kappa(), std::move(arcs)}, net.d()};
  return out;
}

}  // namespace detail

struct ExtractionAttempt {
  Capacity flow_value = 0;
  std::optional<Extraction> result;
};

inline ExtractionAttempt try_extract(const ColouredDigraph& digraph, std::uint32_t d) {
  const auto net = build_network(digraph, d);
  const auto flow = max_flow(net);
  ExtractionAttempt out{flow.value, std::nullopt};
  if (flow.value == net.unbounded()) out.result = detail::decompose(digraph, net, flow);
  return out;
}

/// Rainbow d-out subdigraph via a full flow, or nullopt when the max flow
/// falls short of d*n.
inline std::optional<Extraction> extract_rainbow_dout(const ColouredDigraph& digraph, std::uint32_t d) {
  return try_extract(digraph, d).result;
}

/// Extract on the permuted digraph and map the result back. The smallest-head
/// tie-break then acts on uniformly relabelled heads.
inline std::optional<RainbowDOut> extract_via_permutation(const ColouredDigraph& digraph, std::uint32_t d,
                                                          const PermutationFamily& family) {
  const auto permuted = apply_permutations(digraph, family, false);
  auto got = extract_rainbow_dout(permuted, d);
  if (!got) return std::nullopt;
  return RainbowDOut{apply_permutations(got->rainbow.digraph, family, true), d};
}

inline std::optional<RainbowDOut> extract_via_permutation(const ColouredDigraph& digraph, std::uint32_t d, Rng& rng) {
  return extract_via_permutation(digraph, d, PermutationFamily::sample(digraph.n(), rng));
}

}  // namespace rainbow
