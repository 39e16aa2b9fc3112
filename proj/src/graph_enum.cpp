// Copyright 2026 The Hodge Strata Authors
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

// Enumeration by degeneration. Contracting any edge of a stable graph gives a
// stable graph with one edge fewer and no more loops, so every class with k
// edges is reached from some class with k - 1 edges by either adding a loop
// at a vertex of positive genus or splitting a vertex in two along a new
// edge. Each layer is deduplicated by canonical form before it is expanded.

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hodge/graph.hpp"

namespace hodge::graph {
namespace {

StableGraph add_loop(const StableGraph& g, int v) {
  StableGraph out = g;
  --out.genus[v];
  const int h = out.num_half_edges();
  out.incidence.insert(out.incidence.end(), {v, v});
  out.involution.insert(out.involution.end(), {h + 1, h});
  out.leg_label.insert(out.leg_label.end(), {0, 0});
  return out;
}

// Moves the half-edges of v selected by `mask` to a new vertex of genus
// `new_genus` and joins the two halves with a new edge.
StableGraph split_vertex(const StableGraph& g, int v, const std::vector<int>& halves,
                         unsigned mask, int new_genus) {
  StableGraph out = g;
  const int w = out.num_vertices();
  out.genus[v] -= new_genus;
  out.genus.push_back(new_genus);
  for (std::size_t i = 0; i < halves.size(); ++i) {
    if (mask & (1u << i)) out.incidence[halves[i]] = w;
  }
  const int h = out.num_half_edges();
  out.incidence.insert(out.incidence.end(), {v, w});
  out.involution.insert(out.involution.end(), {h + 1, h});
  out.leg_label.insert(out.leg_label.end(), {0, 0});
  return out;
}

bool stable_at(const StableGraph& g, int v) {
  return 2 * g.genus[v] - 2 + g.valence(v) > 0;
}

}  // namespace

std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int max_loops) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) {
    throw std::invalid_argument("enumerate_stable_graphs: unstable (g, n) = (" +
                                std::to_string(g) + ", " + std::to_string(n) + ")");
  }
  max_loops = std::max(0, std::min(max_loops, g));

  std::vector<std::pair<int, int>> legs;
  for (int i = 1; i <= n; ++i) legs.push_back({0, i});
  std::map<std::string, StableGraph> all;
  std::map<std::string, StableGraph> layer;
  {
    const StableGraph smooth = make_graph({g}, legs, {});
    const CanonicalLabeling lab = canonical_labeling(smooth);
    layer.emplace(lab.form.bytes, apply_labeling(smooth, lab));
  }

  auto offer = [&](std::map<std::string, StableGraph>& next, const StableGraph& cand) {
    const CanonicalLabeling lab = canonical_labeling(cand);
    if (!all.contains(lab.form.bytes) && !next.contains(lab.form.bytes)) {
      next.emplace(lab.form.bytes, apply_labeling(cand, lab));
    }
  };

  while (!layer.empty()) {
    std::map<std::string, StableGraph> next;
    for (const auto& [bytes, graph] : layer) {
      const int loops = loop_number(graph);
      for (int v = 0; v < graph.num_vertices(); ++v) {
        if (graph.genus[v] > 0 && loops < max_loops) offer(next, add_loop(graph, v));
        std::vector<int> halves;
        for (int h = 0; h < graph.num_half_edges(); ++h) {
          if (graph.incidence[h] == v) halves.push_back(h);
        }
        const unsigned subsets = 1u << halves.size();
        for (unsigned mask = 0; mask < subsets; ++mask) {
          for (int gw = 0; gw <= graph.genus[v]; ++gw) {
            StableGraph cand = split_vertex(graph, v, halves, mask, gw);
            if (stable_at(cand, v) && stable_at(cand, cand.num_vertices() - 1)) {
              offer(next, cand);
            }
          }
        }
      }
    }
    all.merge(layer);
    layer = std::move(next);
  }

  std::vector<StableGraph> out;
  out.reserve(all.size());
  for (auto& [bytes, graph] : all) out.push_back(std::move(graph));
  return out;
}

}  // namespace hodge::graph
