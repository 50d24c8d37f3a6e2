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

// Plain-text edge lists:
//
//   n kappa
//   u v colour
//   ...
//
// Vertices are 0-indexed, colours lie in [1, kappa] (0 when kappa is 0).
// For digraphs each line is `tail head colour`. Blank lines and lines
// starting with '#' are ignored.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

struct EdgeListRecord {
  std::uint32_t n = 0;
  std::uint32_t kappa = 0;
  std::vector<Arc> rows;  // (u, v, colour) as read
};

inline EdgeListRecord read_edge_list(std::istream& in) {
  EdgeListRecord rec;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    if (!header) {
      long long n = -1, kappa = -1;
      if (!(ss >> n >> kappa) || n < 0 || kappa < 0)
        throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected `n kappa`");
      rec.n = static_cast<std::uint32_t>(n);
      rec.kappa = static_cast<std::uint32_t>(kappa);
      header = true;
      continue;
    }
    long long u = -1, v = -1, c = -1;
    if (!(ss >> u >> v >> c) || u < 0 || v < 0 || c < 0)
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected `u v colour`");
    rec.rows.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Colour>(c)});
  }
  if (!header) throw std::runtime_error("edge list: missing `n kappa` header");
  return rec;
}

inline ColouredDigraph to_digraph(const EdgeListRecord& rec) { return ColouredDigraph{rec.n, rec.kappa, rec.rows}; }

inline ColouredGraph to_graph(const EdgeListRecord& rec) {
  std::vector<Edge> edges;
  edges.reserve(rec.rows.size());
  for (const auto& r : rec.rows) edges.push_back({r.tail, r.head, r.colour});
  return ColouredGraph{rec.n, rec.kappa, std::move(edges)};
}

inline void write_edge_list(std::ostream& out, const ColouredGraph& g) {
  out << g.n() << ' ' << g.kappa() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.colour << '\n';
}

inline void write_edge_list(std::ostream& out, const ColouredDigraph& d) {
  out << d.n() << ' ' << d.kappa() << '\n';
  for (const auto& a : d.arcs()) out << a.tail << ' ' << a.head << ' ' << a.colour << '\n';
}

}  // namespace rainbow
