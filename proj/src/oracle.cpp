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

#include "hodge/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hodge::oracle {
namespace {

using graph::StableGraph;
using twist::TwistedLevelGraph;

std::string encode(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x) + ",";
  return s;
}

// Minimises `encode_under(perm)` over all vertex permutations.
template <class F>
std::string minimise(int nv, F&& encode_under) {
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  bool first = true;
  do {
    std::vector<int> code = encode_under(perm);
    if (first || code < best) {
      best = std::move(code);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return encode(best);
}

std::vector<int> legs_by_label(const StableGraph& g) {
  std::vector<int> at(g.num_legs(), -1);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.is_leg(h)) at[g.leg_label[h] - 1] = h;
  }
  return at;
}

// Sequences of `count` items from 0..k-1, non-decreasing (multisets).
void multisets(int k, int count, std::vector<int>& acc,
               const std::function<void()>& emit) {
  if (static_cast<int>(acc.size()) == count) {
    emit();
    return;
  }
  for (int i = acc.empty() ? 0 : acc.back(); i < k; ++i) {
    acc.push_back(i);
    multisets(k, count, acc, emit);
    acc.pop_back();
  }
}

void compositions(int total, int parts, std::vector<int>& acc,
                  const std::function<void()>& emit) {
  if (static_cast<int>(acc.size()) == parts - 1) {
    acc.push_back(total);
    emit();
    acc.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    acc.push_back(x);
    compositions(total - x, parts, acc, emit);
    acc.pop_back();
  }
}

}  // namespace

std::string brute_force_key(const StableGraph& g) {
  const int nv = g.num_vertices();
  const auto legs = legs_by_label(g);
  return minimise(nv, [&](const std::vector<int>& p) {
    std::vector<int> code(nv);
    for (int v = 0; v < nv; ++v) code[p[v]] = g.genus[v];
    for (int h : legs) code.push_back(p[g.incidence[h]]);
    std::vector<std::array<int, 2>> edges;
    for (int h = 0; h < g.num_half_edges(); ++h) {
      const int o = g.involution[h];
      if (o <= h) continue;
      const int a = p[g.incidence[h]], b = p[g.incidence[o]];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) code.insert(code.end(), e.begin(), e.end());
    return code;
  });
}

std::string brute_force_key(const TwistedLevelGraph& t) {
  const StableGraph& g = t.base;
  const int nv = g.num_vertices();
  const auto legs = legs_by_label(g);
  return minimise(nv, [&](const std::vector<int>& p) {
    std::vector<int> code(2 * nv);
    for (int v = 0; v < nv; ++v) {
      code[2 * p[v]] = g.genus[v];
      code[2 * p[v] + 1] = t.level ? (*t.level)[v] : 0;
    }
    for (int h : legs) code.push_back(p[g.incidence[h]]);
    std::vector<std::array<int, 4>> edges;
    for (int h = 0; h < g.num_half_edges(); ++h) {
      const int o = g.involution[h];
      if (o <= h) continue;
      std::array<int, 2> x{p[g.incidence[h]], t.twist[h]};
      std::array<int, 2> y{p[g.incidence[o]], t.twist[o]};
      if (y < x) std::swap(x, y);
      edges.push_back({x[0], x[1], y[0], y[1]});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) code.insert(code.end(), e.begin(), e.end());
    return code;
  });
}

std::vector<StableGraph> stable_graphs(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) {
    throw std::invalid_argument("oracle: unstable (g, n)");
  }
  std::map<std::string, StableGraph> found;
  const int max_vertices = std::max(1, 2 * g - 2 + n);
  const int max_edges = 3 * g - 3 + n;
  for (int nv = 1; nv <= max_vertices; ++nv) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < nv; ++a) {
      for (int b = a; b < nv; ++b) pairs.push_back({a, b});
    }
    for (int h1 = 0; h1 <= g; ++h1) {
      const int ne = nv - 1 + h1;
      if (ne > max_edges) continue;
      std::vector<int> edge_choice, genus_choice;
      multisets(static_cast<int>(pairs.size()), ne, edge_choice, [&] {
        std::vector<std::pair<int, int>> edges;
        for (int i : edge_choice) edges.push_back(pairs[i]);
        compositions(g - h1, nv, genus_choice, [&] {
          std::vector<int> leg_at(n, 0);
          while (true) {
            std::vector<std::pair<int, int>> legs;
            for (int i = 0; i < n; ++i) legs.push_back({leg_at[i], i + 1});
            StableGraph cand = graph::make_graph(genus_choice, legs, edges);
            if (graph::validate(cand, g).ok()) found.emplace(brute_force_key(cand), cand);
            int k = 0;
            while (k < n && ++leg_at[k] == nv) leg_at[k++] = 0;
            if (k == n) break;
          }
        });
      });
    }
  }
  std::vector<StableGraph> out;
  for (auto& [key, graph] : found) out.push_back(std::move(graph));
  return out;
}

std::uint64_t automorphism_count(const StableGraph& g) {
  const int nv = g.num_vertices();
  std::vector<std::array<int, 2>> edges;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.involution[h] > h) edges.push_back({h, g.involution[h]});
  }
  std::uint64_t total = 0;
  std::vector<int> p(nv);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < nv && ok; ++v) ok = g.genus[p[v]] == g.genus[v];
    for (int h = 0; h < g.num_half_edges() && ok; ++h) {
      // Legs are fixed by their labels, so their vertex must be fixed by p.
      if (g.is_leg(h)) ok = p[g.incidence[h]] == g.incidence[h];
    }
    if (!ok) continue;
    std::vector<bool> used(edges.size(), false);
    std::function<std::uint64_t(std::size_t)> place = [&](std::size_t i) -> std::uint64_t {
      if (i == edges.size()) return 1;
      std::uint64_t count = 0;
      const int a = p[g.incidence[edges[i][0]]], b = p[g.incidence[edges[i][1]]];
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (used[j]) continue;
        const int c = g.incidence[edges[j][0]], d = g.incidence[edges[j][1]];
        const int ways = (a == c && b == d) + (a == d && b == c);
        if (ways == 0) continue;
        used[j] = true;
        count += static_cast<std::uint64_t>(ways) * place(i + 1);
        used[j] = false;
      }
      return count;
    };
    total += place(0);
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

std::vector<TwistedLevelGraph> level_graphs(
    int g, const twist::ZeroProfile& zeros, int depth,
    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& accept) {
  const int n = static_cast<int>(zeros.size());
  if (2 * g - 2 + n <= 0) return {};
  const int size = std::accumulate(zeros.begin(), zeros.end(), 0);
  std::map<std::string, TwistedLevelGraph> found;
  for (const StableGraph& base : stable_graphs(g, n)) {
    const int nv = base.num_vertices();
    std::vector<int> leg_at(n + 1, -1), edge_half;
    for (int h = 0; h < base.num_half_edges(); ++h) {
      if (base.is_leg(h)) leg_at[base.leg_label[h]] = base.incidence[h];
      else if (base.involution[h] > h) edge_half.push_back(h);
    }
    std::vector<int> levels(nv, 0);
    while (true) {
      std::vector<bool> hit(depth + 1, false);
      for (int l : levels) hit[-l] = true;
      const bool onto = std::find(hit.begin(), hit.end(), false) == hit.end();
      if (onto && accept(levels, leg_at)) {
        TwistedLevelGraph t{base, std::vector<int>(base.num_half_edges(), 0), levels};
        for (int h = 0; h < base.num_half_edges(); ++h) {
          if (base.is_leg(h)) t.twist[h] = zeros[base.leg_label[h] - 1];
        }
        std::vector<int> mu(edge_half.size(), -size - 4);
        while (true) {
          for (std::size_t e = 0; e < edge_half.size(); ++e) {
            t.twist[edge_half[e]] = mu[e];
            t.twist[base.involution[edge_half[e]]] = -mu[e] - 2;
          }
          if (twist::validate_twist(t, zeros).ok()) found.emplace(brute_force_key(t), t);
          std::size_t k = 0;
          while (k < mu.size() && ++mu[k] > size + 2) mu[k++] = -size - 4;
          if (k == mu.size()) break;
        }
      }
      int k = 0;
      while (k < nv && --levels[k] < -depth) levels[k++] = 0;
      if (k == nv) break;
    }
  }
  std::vector<TwistedLevelGraph> out;
  for (auto& [key, t] : found) out.push_back(std::move(t));
  return out;
}

std::vector<TwistedLevelGraph> bicolored(int g, const twist::ZeroProfile& zeros,
                                         const twist::BicoloredQuery& q) {
  return level_graphs(g, zeros, 1, [&](const std::vector<int>& lv, const std::vector<int>& at) {
    const bool down = lv[at[q.anchor]] == -1;
    switch (q.variant) {
      case twist::Anchoring::down: return down;
      case twist::Anchoring::both: return down && lv[at[q.second]] == -1;
      case twist::Anchoring::split: return down && lv[at[q.second]] == 0;
      case twist::Anchoring::split_literal: return false;
    }
    return false;
  });
}

}  // namespace hodge::oracle
