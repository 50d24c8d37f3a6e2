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

// Exact rainbow-copy search: a spanning backtracker for tiny graphs and a
// matroid-intersection rainbow spanning tree finder.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/target_graphs.hpp"

namespace rainbow {

struct RainbowEmbedding {
  std::vector<Vertex> vertex_map;  // H vertex -> G vertex
  std::vector<Edge> edge_images;   // aligned with TargetGraph::edges
};

inline constexpr std::uint32_t kExactSearchMaxVertices = 16;

namespace detail {

// Dense colour matrix; 0 = no edge.
inline std::vector<std::vector<Colour>> colour_matrix(const ColouredGraph& g) {
  std::vector<std::vector<Colour>> m(g.n(), std::vector<Colour>(g.n(), kUncoloured));
  for (const auto& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = e.colour;
  return m;
}

}  // namespace detail

inline bool verify_embedding(const ColouredGraph& g, const TargetGraph& h, const RainbowEmbedding& emb) {
  if (emb.vertex_map.size() != h.n || emb.edge_images.size() != h.edges.size()) return false;
  std::vector<bool> hit(g.n(), false);
  for (auto w : emb.vertex_map) {
    if (w >= g.n() || hit[w]) return false;
    hit[w] = true;
  }
  const auto present = g.sorted_edges();
  std::vector<Colour> colours;
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    auto [a, b] = h.edges[i];
    auto img = emb.edge_images[i];
    const Vertex u = std::min(emb.vertex_map[a], emb.vertex_map[b]);
    const Vertex v = std::max(emb.vertex_map[a], emb.vertex_map[b]);
    if (img.u != u || img.v != v) return false;
    if (!std::binary_search(present.begin(), present.end(), img)) return false;
    colours.push_back(img.colour);
  }
  std::sort(colours.begin(), colours.end());
  return std::adjacent_find(colours.begin(), colours.end()) == colours.end();
}

/// Complete backtracking search for a rainbow spanning copy of H in G.
/// H vertices are placed in descending degree order (ties: most already
/// placed neighbours, then smallest index); G candidates ascend.
inline std::optional<RainbowEmbedding> find_rainbow_copy_exact(const ColouredGraph& g, const TargetGraph& h) {
  if (g.n() != h.n) throw std::invalid_argument("spanning search needs n(G) == n(H)");
  if (h.n > kExactSearchMaxVertices) throw std::length_error("exact rainbow search is capped at 16 vertices");
  const std::uint32_t n = h.n;

  std::vector<Colour> distinct;
  for (const auto& e : g.edges()) distinct.push_back(e.colour);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < h.edges.size()) return std::nullopt;

  const auto hdeg = h.degrees();
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> hadj(n);  // neighbour, edge index
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    auto [a, b] = h.edges[i];
    hadj[a].emplace_back(b, i);
    hadj[b].emplace_back(a, i);
  }

  std::vector<Vertex> order;
  std::vector<std::uint32_t> placed_nbrs(n, 0);
  std::vector<bool> placed(n, false);
  for (std::uint32_t step = 0; step < n; ++step) {
    Vertex pick = n;
    for (Vertex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (pick == n || hdeg[v] > hdeg[pick] || (hdeg[v] == hdeg[pick] && placed_nbrs[v] > placed_nbrs[pick]))
        pick = v;
    }
    placed[pick] = true;
    order.push_back(pick);
    for (auto [w, _] : hadj[pick]) ++placed_nbrs[w];
  }
  std::vector<std::uint32_t> position(n);
  for (std::uint32_t i = 0; i < n; ++i) position[order[i]] = i;
  // back[i]: (earlier position, edge index) for H-edges from order[i] to earlier vertices.
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> back(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (auto [w, idx] : hadj[order[i]])
      if (position[w] < i) back[i].emplace_back(position[w], idx);

  const auto cm = detail::colour_matrix(g);
  std::vector<std::uint32_t> gdeg(n, 0);
  for (const auto& e : g.edges()) {
    ++gdeg[e.u];
    ++gdeg[e.v];
  }
  std::vector<bool> colour_used(g.kappa() + 1, false);
  std::vector<bool> g_used(n, false);
  std::vector<Vertex> image(n, 0);  // by position

  auto extend = [&](auto&& self, std::uint32_t i) -> bool {
    if (i == n) return true;
    const Vertex hv = order[i];
    for (Vertex c = 0; c < n; ++c) {
      if (g_used[c] || gdeg[c] < hdeg[hv]) continue;
      std::size_t taken = 0;
      bool ok = true;
      for (auto [j, idx] : back[i]) {
        const Colour col = cm[c][image[j]];
        if (col == kUncoloured || colour_used[col]) {
          ok = false;
          break;
        }
        colour_used[col] = true;
        ++taken;
      }
      if (ok) {
        g_used[c] = true;
        image[i] = c;
        if (self(self, i + 1)) return true;
        g_used[c] = false;
      }
      for (std::size_t t = 0; t < taken; ++t) colour_used[cm[c][image[back[i][t].first]]] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;

  RainbowEmbedding emb;
  emb.vertex_map.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) emb.vertex_map[order[i]] = image[i];
  for (auto [a, b] : h.edges) {
    const Vertex u = std::min(emb.vertex_map[a], emb.vertex_map[b]);
    const Vertex v = std::max(emb.vertex_map[a], emb.vertex_map[b]);
    emb.edge_images.push_back({u, v, cm[u][v]});
  }
  return emb;
}

// ---------------------------------------------------------------------------
// Rainbow spanning tree as a maximum common independent set of the graphic
// matroid of G and the partition matroid of its colour classes.

struct RainbowSpanningTree {
  TargetGraph tree;
  RainbowEmbedding embedding;  // identity vertex map
};

namespace detail {

// Forest adjacency restricted to the current independent set; used to find
// the fundamental path between two vertices.
class ForestPaths {
 public:
  ForestPaths(std::uint32_t n, const std::vector<Edge>& edges, const std::vector<std::size_t>& in_set)
      : adj_(n), comp_(n, -1), parent_(n), parent_edge_(n), depth_(n, 0) {
    for (auto id : in_set) {
      adj_[edges[id].u].emplace_back(edges[id].v, id);
      adj_[edges[id].v].emplace_back(edges[id].u, id);
    }
    int label = 0;
    for (Vertex r = 0; r < n; ++r) {
      if (comp_[r] >= 0) continue;
      std::vector<Vertex> stack{r};
      comp_[r] = label;
      parent_[r] = r;
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto [w, id] : adj_[u]) {
          if (comp_[w] >= 0) continue;
          comp_[w] = label;
          parent_[w] = u;
          parent_edge_[w] = id;
          depth_[w] = depth_[u] + 1;
          stack.push_back(w);
        }
      }
      ++label;
    }
  }

  bool connected(Vertex a, Vertex b) const { return comp_[a] == comp_[b]; }

  /// Edge ids on the forest path a..b (requires connected(a, b)).
  std::vector<std::size_t> path(Vertex a, Vertex b) const {
    std::vector<std::size_t> out;
    while (a != b) {
      if (depth_[a] < depth_[b]) std::swap(a, b);
      out.push_back(parent_edge_[a]);
      a = parent_[a];
    }
    return out;
  }

 private:
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj_;
  std::vector<int> comp_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::uint32_t> depth_;
};

}  // namespace detail

/// Largest rainbow forest of G by shortest augmenting paths in the exchange
/// graph. Returns edge indices into g.edges().
inline std::vector<std::size_t> max_rainbow_forest(const ColouredGraph& g) {
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  std::vector<bool> in(m, false);
  std::vector<std::size_t> members;

  while (true) {
    members.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (in[i]) members.push_back(i);
    const detail::ForestPaths forest{g.n(), edges, members};
    std::vector<std::size_t> colour_owner(g.kappa() + 1, m);
    for (auto id : members) colour_owner[edges[id].colour] = id;

    // Exchange graph over ground elements. For x in I, y not in I:
    //   x -> y when I - x + y is a forest,
    //   y -> x when I - x + y is rainbow.
    std::vector<std::vector<std::size_t>> out(m);
    std::vector<bool> is_source(m, false), is_sink(m, false);
    for (std::size_t y = 0; y < m; ++y) {
      if (in[y]) continue;
      const auto& e = edges[y];
      if (!forest.connected(e.u, e.v)) {
        is_source[y] = true;
      } else {
        for (auto x : forest.path(e.u, e.v)) out[x].push_back(y);
      }
      const auto owner = colour_owner[e.colour];
      if (owner == m) {
        is_sink[y] = true;
      } else {
        out[y].push_back(owner);
      }
    }

    // BFS from all sources; first sink reached gives a shortest path.
    std::vector<std::size_t> prev(m, m);
    std::vector<bool> seen(m, false);
    std::queue<std::size_t> q;
    for (std::size_t y = 0; y < m; ++y)
      if (is_source[y]) {
        seen[y] = true;
        q.push(y);
      }
    std::size_t end = m;
    while (!q.empty() && end == m) {
      const auto u = q.front();
      q.pop();
      if (is_sink[u]) {
        end = u;
        break;
      }
      for (auto w : out[u]) {
        if (seen[w]) continue;
        seen[w] = true;
        prev[w] = u;
        q.push(w);
      }
    }
    if (end == m) break;
    for (auto cur = end; cur != m; cur = prev[cur]) in[cur] = !in[cur];
  }

  members.clear();
  for (std::size_t i = 0; i < m; ++i)
    if (in[i]) members.push_back(i);
  return members;
}

inline std::optional<RainbowSpanningTree> find_rainbow_spanning_tree(const ColouredGraph& g) {
  if (g.n() == 0) return std::nullopt;
  const auto forest = max_rainbow_forest(g);
  if (forest.size() + 1 != g.n()) return std::nullopt;
  std::vector<std::pair<Vertex, Vertex>> tree_edges;
  for (auto id : forest) tree_edges.emplace_back(g.edges()[id].u, g.edges()[id].v);
  RainbowSpanningTree out;
  out.tree = make_target("rainbow-spanning-tree", Family::tree, g.n(), std::move(tree_edges));
  out.embedding.vertex_map.resize(g.n());
  std::iota(out.embedding.vertex_map.begin(), out.embedding.vertex_map.end(), Vertex{0});
  std::vector<Edge> chosen;
  for (auto id : forest) chosen.push_back(g.edges()[id]);
  std::sort(chosen.begin(), chosen.end());
  // make_target sorts edges, so sorted images line up with tree.edges.
  out.embedding.edge_images = std::move(chosen);
  return out;
}

}  // namespace rainbow
