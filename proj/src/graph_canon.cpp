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

// Canonical labeling of (decorated) stable graphs.
//
// Vertices are coloured by their local data, the colouring is refined by
// neighbourhood signatures until stable, and the remaining ambiguity is
// resolved by individualising each vertex of the first non-trivial cell in
// turn. The whole search tree is explored: the leaves carrying the minimal
// code are exactly one orbit of the vertex automorphism group, so counting
// them gives that group's order. Half-edge automorphisms (permuting parallel
// edges, flipping loops) are a product of factorials read off directly.

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hodge/graph.hpp"

namespace hodge::graph {
namespace {

using Code = std::vector<long>;
using LabelPair = std::pair<int, int>;

struct Prepared {
  int num_vertices = 0;
  std::vector<Code> vertex_key;
  // adj[v][w]: sorted (label at v, label at w) for each v-w edge, v != w.
  std::vector<std::vector<std::vector<LabelPair>>> adj;
  std::vector<std::vector<int>> adj_rank;
  std::vector<int> key_rank;
};

int label_of(const Decoration& d, int h) {
  return d.half_edge_label.empty() ? 0 : d.half_edge_label[h];
}

int color_of(const Decoration& d, int v) {
  return d.vertex_color.empty() ? 0 : d.vertex_color[v];
}

template <class T>
std::vector<int> rank_values(const std::vector<T>& values) {
  std::vector<T> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ranks[i] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), values[i]) -
        distinct.begin());
  }
  return ranks;
}

Prepared prepare(const StableGraph& g, const Decoration& deco) {
  const int nv = g.num_vertices();
  const int nh = g.num_half_edges();
  if (nv == 0 || static_cast<int>(g.involution.size()) != nh ||
      static_cast<int>(g.leg_label.size()) != nh) {
    throw std::invalid_argument("canonical_labeling: malformed graph");
  }
  if ((!deco.vertex_color.empty() &&
       static_cast<int>(deco.vertex_color.size()) != nv) ||
      (!deco.half_edge_label.empty() &&
       static_cast<int>(deco.half_edge_label.size()) != nh)) {
    throw std::invalid_argument("canonical_labeling: decoration size mismatch");
  }
  for (int h = 0; h < nh; ++h) {
    if (g.incidence[h] < 0 || g.incidence[h] >= nv || g.involution[h] < 0 ||
        g.involution[h] >= nh || g.involution[g.involution[h]] != h) {
      throw std::invalid_argument("canonical_labeling: malformed graph");
    }
  }

  Prepared p;
  p.num_vertices = nv;
  p.adj.assign(nv, std::vector<std::vector<LabelPair>>(nv));
  std::vector<std::vector<LabelPair>> legs(nv), loops(nv);
  for (int h = 0; h < nh; ++h) {
    const int v = g.incidence[h];
    const int o = g.involution[h];
    if (o == h) {
      legs[v].push_back({g.leg_label[h], label_of(deco, h)});
    } else if (g.incidence[o] == v) {
      if (h < o) {
        const int a = label_of(deco, h), b = label_of(deco, o);
        loops[v].push_back({std::min(a, b), std::max(a, b)});
      }
    } else {
      p.adj[v][g.incidence[o]].push_back({label_of(deco, h), label_of(deco, o)});
    }
  }
  p.vertex_key.resize(nv);
  for (int v = 0; v < nv; ++v) {
    std::sort(legs[v].begin(), legs[v].end());
    std::sort(loops[v].begin(), loops[v].end());
    Code& key = p.vertex_key[v];
    key = {g.genus[v], color_of(deco, v), static_cast<long>(legs[v].size())};
    for (auto [a, b] : legs[v]) {
      key.push_back(a);
      key.push_back(b);
    }
    key.push_back(static_cast<long>(loops[v].size()));
    for (auto [a, b] : loops[v]) {
      key.push_back(a);
      key.push_back(b);
    }
    for (int w = 0; w < nv; ++w) std::sort(p.adj[v][w].begin(), p.adj[v][w].end());
  }
  p.key_rank = rank_values(p.vertex_key);

  std::vector<std::vector<LabelPair>> flat;
  for (int v = 0; v < nv; ++v) {
    for (int w = 0; w < nv; ++w) flat.push_back(p.adj[v][w]);
  }
  // Rank 0 is reserved for "no edge" since the empty vector sorts first.
  const std::vector<int> flat_rank = rank_values(flat);
  p.adj_rank.assign(nv, std::vector<int>(nv));
  for (int v = 0; v < nv; ++v) {
    for (int w = 0; w < nv; ++w) p.adj_rank[v][w] = flat_rank[v * nv + w];
  }
  return p;
}

int count_cells(const std::vector<int>& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

void refine(const Prepared& p, std::vector<int>& colors) {
  const int nv = p.num_vertices;
  int cells = count_cells(colors);
  while (true) {
    std::vector<std::vector<long>> sig(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::pair<int, int>> nbrs;
      for (int w = 0; w < nv; ++w) {
        if (w != v && p.adj_rank[v][w] != 0) nbrs.push_back({colors[w], p.adj_rank[v][w]});
      }
      std::sort(nbrs.begin(), nbrs.end());
      sig[v].push_back(colors[v]);
      for (auto [c, a] : nbrs) {
        sig[v].push_back(c);
        sig[v].push_back(a);
      }
    }
    colors = rank_values(sig);
    const int next = count_cells(colors);
    if (next == cells) return;
    cells = next;
  }
}

struct Search {
  const Prepared& p;
  Code best;
  std::vector<int> best_order;
  std::uint64_t best_count = 0;

  Code leaf_code(const std::vector<int>& order) const {
    const int nv = p.num_vertices;
    Code code{nv};
    for (int v : order) code.insert(code.end(), p.vertex_key[v].begin(), p.vertex_key[v].end());
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) {
        const auto& e = p.adj[order[i]][order[j]];
        code.push_back(static_cast<long>(e.size()));
        for (auto [a, b] : e) {
          code.push_back(a);
          code.push_back(b);
        }
      }
    }
    return code;
  }

  void run(std::vector<int> colors) {
    refine(p, colors);
    const int nv = p.num_vertices;
    if (count_cells(colors) == nv) {
      std::vector<int> order(nv);
      for (int v = 0; v < nv; ++v) order[colors[v]] = v;
      Code code = leaf_code(order);
      if (best_count == 0 || code < best) {
        best = std::move(code);
        best_order = std::move(order);
        best_count = 1;
      } else if (code == best) {
        ++best_count;
      }
      return;
    }
    std::vector<int> size(nv, 0);
    for (int c : colors) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    for (int v = 0; v < nv; ++v) {
      if (colors[v] != target) continue;
      std::vector<std::pair<int, int>> split(nv);
      for (int x = 0; x < nv; ++x) {
        split[x] = {colors[x], (colors[x] == target && x != v) ? 1 : 0};
      }
      run(rank_values(split));
    }
  }
};

std::uint64_t factorial_u64(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::uint64_t half_edge_symmetries(const StableGraph& g, const Decoration& deco) {
  std::map<std::tuple<int, int, int, int>, std::uint64_t> groups;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int o = g.involution[h];
    if (o <= h) continue;
    int v = g.incidence[h], w = g.incidence[o];
    int a = label_of(deco, h), b = label_of(deco, o);
    if (v > w || (v == w && a > b)) {
      std::swap(v, w);
      std::swap(a, b);
    }
    ++groups[{v, w, a, b}];
  }
  std::uint64_t count = 1;
  for (const auto& [key, m] : groups) {
    count *= factorial_u64(m);
    const auto& [v, w, a, b] = key;
    if (v == w && a == b) count <<= m;  // each loop can be flipped
  }
  return count;
}

std::string encode(const Code& code) {
  std::ostringstream out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out << ',';
    out << code[i];
  }
  return out.str();
}

}  // namespace

CanonicalLabeling canonical_labeling(const StableGraph& g, const Decoration& deco) {
  const Prepared p = prepare(g, deco);
  Search search{p, {}, {}, 0};
  search.run(p.key_rank);

  CanonicalLabeling out;
  out.form.bytes = encode(search.best);
  out.form.automorphism_count = search.best_count * half_edge_symmetries(g, deco);
  out.vertex_order = search.best_order;

  const int nv = g.num_vertices();
  std::vector<int> position(nv);
  for (int i = 0; i < nv; ++i) position[out.vertex_order[i]] = i;

  // Legs first in label order, then edges by (position, position, labels).
  std::vector<std::pair<int, int>> legs;
  std::vector<std::tuple<int, int, int, int, int, int>> edges;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int o = g.involution[h];
    if (o == h) {
      legs.push_back({g.leg_label[h], h});
      continue;
    }
    if (o < h) continue;
    int x = h, y = o;
    auto key = [&](int e) { return std::pair{position[g.incidence[e]], label_of(deco, e)}; };
    if (key(y) < key(x)) std::swap(x, y);
    edges.push_back({position[g.incidence[x]], position[g.incidence[y]],
                     label_of(deco, x), label_of(deco, y), x, y});
  }
  std::sort(legs.begin(), legs.end());
  std::sort(edges.begin(), edges.end());
  for (auto [label, h] : legs) out.half_edge_order.push_back(h);
  for (const auto& e : edges) {
    out.half_edge_order.push_back(std::get<4>(e));
    out.half_edge_order.push_back(std::get<5>(e));
  }
  return out;
}

CanonicalForm canonical_form(const StableGraph& g) {
  const ValidationResult r = validate(g);
  if (!r.ok()) {
    throw std::invalid_argument("canonical_form: invalid graph: " +
                                r.violations.front().message);
  }
  return canonical_labeling(g).form;
}

StableGraph apply_labeling(const StableGraph& g, const CanonicalLabeling& labeling) {
  std::vector<int> vperm(g.num_vertices()), hperm(g.num_half_edges());
  for (std::size_t i = 0; i < labeling.vertex_order.size(); ++i) {
    vperm[labeling.vertex_order[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < labeling.half_edge_order.size(); ++i) {
    hperm[labeling.half_edge_order[i]] = static_cast<int>(i);
  }
  return permute(g, vperm, hperm);
}

StableGraph canonical_representative(const StableGraph& g) {
  return apply_labeling(g, canonical_labeling(g));
}

}  // namespace hodge::graph
