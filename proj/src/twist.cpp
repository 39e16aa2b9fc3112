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

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "hodge/twist.hpp"

namespace hodge::twist {

int TwistedLevelGraph::depth() const {
  if (!level || level->empty()) return 0;
  return -*std::min_element(level->begin(), level->end());
}

const char* to_string(TwistViolationKind kind) {
  switch (kind) {
    case TwistViolationKind::base_graph: return "base graph";
    case TwistViolationKind::malformed: return "malformed";
    case TwistViolationKind::edge_condition: return "edge condition";
    case TwistViolationKind::leg_twist: return "leg twist";
    case TwistViolationKind::vertex_degree: return "vertex degree condition";
    case TwistViolationKind::order: return "order compatibility";
    case TwistViolationKind::level_range: return "level range";
    case TwistViolationKind::level_surjectivity: return "level surjectivity";
    case TwistViolationKind::horizontal_edge: return "horizontal edge";
  }
  return "unknown";
}

bool TwistValidation::has(TwistViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const TwistViolation& v) { return v.kind == kind; });
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool has_cycle(int n, const std::vector<std::vector<int>>& out) {
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<int, std::size_t>> stack;
  for (int s = 0; s < n; ++s) {
    if (state[s]) continue;
    stack.push_back({s, 0});
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < out[v].size()) {
        const int w = out[v][i++];
        if (state[w] == 1) return true;
        if (state[w] == 0) {
          state[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

TwistValidation validate_twist(const TwistedLevelGraph& t, const ZeroProfile& zeros,
                               std::optional<bool> forbid_horizontal) {
  TwistValidation r;
  auto add = [&r](TwistViolationKind k, int i, std::string m) {
    r.violations.push_back({k, i, std::move(m)});
  };
  const StableGraph& g = t.base;
  const auto base = graph::validate(g);
  if (!base.ok()) {
    add(TwistViolationKind::base_graph, -1, base.violations.front().message);
    return r;
  }
  const int nh = g.num_half_edges();
  const int nv = g.num_vertices();
  if (static_cast<int>(t.twist.size()) != nh) {
    add(TwistViolationKind::malformed, -1, "twist vector does not cover every half-edge");
    return r;
  }
  if (t.level && static_cast<int>(t.level->size()) != nv) {
    add(TwistViolationKind::malformed, -1, "level vector does not cover every vertex");
    return r;
  }
  if (static_cast<int>(zeros.size()) != g.num_legs()) {
    add(TwistViolationKind::malformed, -1, "zero profile length differs from leg count");
    return r;
  }
  const bool no_horizontal = forbid_horizontal.value_or(t.level.has_value());

  for (int h = 0; h < nh; ++h) {
    const int o = g.involution[h];
    if (o == h) {
      if (t.twist[h] != zeros[g.leg_label[h] - 1]) {
        add(TwistViolationKind::leg_twist, h,
            "twist at leg " + std::to_string(g.leg_label[h]) + " is " +
                std::to_string(t.twist[h]) + ", expected " +
                std::to_string(zeros[g.leg_label[h] - 1]));
      }
      continue;
    }
    if (h > o) continue;
    if (t.twist[h] != -t.twist[o] - 2) {
      add(TwistViolationKind::edge_condition, h,
          "edge (" + std::to_string(h) + ", " + std::to_string(o) +
              ") violates mu(h) = -mu(h') - 2");
    } else if (t.twist[h] == -1 && no_horizontal) {
      add(TwistViolationKind::horizontal_edge, h,
          "edge (" + std::to_string(h) + ", " + std::to_string(o) + ") is horizontal");
    }
  }

  if (t.level) {
    const auto& lv = *t.level;
    bool in_range = true;
    for (int v = 0; v < nv; ++v) {
      if (lv[v] > 0) {
        add(TwistViolationKind::level_range, v,
            "vertex " + std::to_string(v) + " has positive level");
        in_range = false;
      }
    }
    if (in_range) {
      const int d = t.depth();
      std::vector<bool> hit(d + 1, false);
      for (int v = 0; v < nv; ++v) hit[-lv[v]] = true;
      for (int k = 0; k <= d; ++k) {
        if (!hit[k]) {
          add(TwistViolationKind::level_surjectivity, -1,
              "level " + std::to_string(-k) + " is empty");
        }
      }
    }
  }

  const int total_zeros = std::accumulate(zeros.begin(), zeros.end(), 0);
  const bool complete = total_zeros == 2 * graph::genus(g) - 2;
  std::vector<int> sum(nv, 0);
  for (int h = 0; h < nh; ++h) sum[g.incidence[h]] += t.twist[h];
  for (int v = 0; v < nv; ++v) {
    const bool below = t.level && (*t.level)[v] < 0;
    if ((complete || below) && sum[v] != 2 * g.genus[v] - 2) {
      add(TwistViolationKind::vertex_degree, v,
          "vertex degree condition fails at vertex " + std::to_string(v) +
              ": twists sum to " + std::to_string(sum[v]) + ", expected " +
              std::to_string(2 * g.genus[v] - 2));
    }
  }

  // Order: horizontal edges collapse their endpoints, strict edges point down.
  UnionFind classes(nv);
  for (int h = 0; h < nh; ++h) {
    const int o = g.involution[h];
    if (o != h && t.twist[h] == -1 && t.twist[o] == -1) {
      classes.unite(g.incidence[h], g.incidence[o]);
    }
  }
  std::vector<std::vector<int>> down(nv);
  for (int h = 0; h < nh; ++h) {
    const int o = g.involution[h];
    if (o == h || t.twist[h] + 1 <= 0 || t.twist[h] != -t.twist[o] - 2) continue;
    const int upper = g.incidence[h], lower = g.incidence[o];
    if (t.level) {
      if ((*t.level)[upper] <= (*t.level)[lower]) {
        add(TwistViolationKind::order, h,
            "edge at half-edge " + std::to_string(h) +
                " does not go strictly down in level");
      }
    }
    const int cu = classes.find(upper), cl = classes.find(lower);
    if (cu == cl) {
      add(TwistViolationKind::order, h,
          "strict edge at half-edge " + std::to_string(h) +
              " joins vertices forced to the same level");
    } else {
      down[cu].push_back(cl);
    }
  }
  if (t.level) {
    for (int h = 0; h < nh; ++h) {
      const int o = g.involution[h];
      if (o != h && h < o && t.twist[h] == -1 && t.twist[o] == -1 &&
          (*t.level)[g.incidence[h]] != (*t.level)[g.incidence[o]]) {
        add(TwistViolationKind::order, h,
            "horizontal edge at half-edge " + std::to_string(h) + " changes level");
      }
    }
  }
  if (has_cycle(nv, down)) {
    add(TwistViolationKind::order, -1, "twist orientation has a directed cycle");
  }
  return r;
}

std::int64_t multiplicity(const TwistedLevelGraph& t) {
  std::int64_t m = 1;
  const StableGraph& g = t.base;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int o = g.involution[h];
    if (o == h || h > o) continue;
    const std::int64_t factor = std::abs(t.twist[h] + 1);
    if (factor == 0) throw std::domain_error("multiplicity: horizontal edge");
    m *= factor;
  }
  return m;
}

int degree_defect(const TwistedLevelGraph& t) {
  const StableGraph& g = t.base;
  int defect = std::accumulate(t.twist.begin(), t.twist.end(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) defect -= 2 * g.genus[v] - 2;
  return defect;
}

graph::CanonicalLabeling canonical_labeling(const TwistedLevelGraph& t) {
  graph::Decoration deco;
  deco.half_edge_label = t.twist;
  if (t.level) deco.vertex_color = *t.level;
  return graph::canonical_labeling(t.base, deco);
}

TwistedLevelGraph canonical_representative(const TwistedLevelGraph& t) {
  const auto lab = canonical_labeling(t);
  TwistedLevelGraph out;
  out.base = graph::apply_labeling(t.base, lab);
  out.twist.resize(t.twist.size());
  for (std::size_t i = 0; i < lab.half_edge_order.size(); ++i) {
    out.twist[i] = t.twist[lab.half_edge_order[i]];
  }
  if (t.level) {
    std::vector<int> lv(t.level->size());
    for (std::size_t i = 0; i < lab.vertex_order.size(); ++i) {
      lv[i] = (*t.level)[lab.vertex_order[i]];
    }
    out.level = std::move(lv);
  }
  return out;
}

BiColoredGraph rt_bubble_graph(int g, const ZeroProfile& zeros,
                               const std::vector<int>& bubble) {
  const int n = static_cast<int>(zeros.size());
  std::vector<bool> below(n + 1, false);
  for (int i : bubble) {
    if (i < 1 || i > n) throw std::invalid_argument("rt_bubble_graph: marking out of range");
    below[i] = true;
  }
  std::vector<std::pair<int, int>> legs;
  int bubble_zeros = 0;
  for (int i = 1; i <= n; ++i) {
    legs.push_back({below[i] ? 1 : 0, i});
    if (below[i]) bubble_zeros += zeros[i - 1];
  }
  BiColoredGraph t;
  t.base = graph::make_graph({g, 0}, legs, {{0, 1}});
  t.twist.assign(zeros.begin(), zeros.end());
  t.twist.push_back(bubble_zeros);       // upper half-edge, on the genus-g vertex
  t.twist.push_back(-bubble_zeros - 2);  // lower half-edge, on the bubble
  t.level = std::vector<int>{0, -1};
  return t;
}

std::optional<std::vector<int>> rt_bubble_markings(const TwistedLevelGraph& t) {
  const StableGraph& g = t.base;
  if (!t.level || g.num_vertices() != 2 || g.num_edges() != 1) return std::nullopt;
  const auto& lv = *t.level;
  const int bottom = lv[0] == -1 ? 0 : 1;
  if (lv[bottom] != -1 || lv[1 - bottom] != 0 || g.genus[bottom] != 0) return std::nullopt;
  std::vector<int> markings;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.is_leg(h) && g.incidence[h] == bottom) markings.push_back(g.leg_label[h]);
  }
  std::sort(markings.begin(), markings.end());
  return markings;
}

TwistedLevelGraph collapse_top_levels(const TwistedLevelGraph& t) {
  if (!t.level) throw std::invalid_argument("collapse_top_levels: no level function");
  const StableGraph& g = t.base;
  const auto& lv = *t.level;
  const int nv = g.num_vertices();
  UnionFind uf(nv);
  std::vector<bool> contracted(g.num_half_edges(), false);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int o = g.involution[h];
    if (o == h) continue;
    const int a = g.incidence[h], b = g.incidence[o];
    if (lv[a] >= -1 && lv[b] >= -1) {
      uf.unite(a, b);
      contracted[h] = true;
    }
  }
  std::vector<int> id(nv, -1);
  std::vector<int> genus, level, vertices_in, half_edges_in;
  for (int v = 0; v < nv; ++v) {
    const int root = uf.find(v);
    if (id[root] < 0) {
      id[root] = static_cast<int>(genus.size());
      genus.push_back(0);
      level.push_back(lv[v] >= -1 ? 0 : lv[v] + 1);
      vertices_in.push_back(0);
      half_edges_in.push_back(0);
    }
    genus[id[root]] += g.genus[v];
    ++vertices_in[id[root]];
  }
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (contracted[h]) ++half_edges_in[id[uf.find(g.incidence[h])]];
  }
  for (std::size_t c = 0; c < genus.size(); ++c) {
    genus[c] += half_edges_in[c] / 2 - vertices_in[c] + 1;
  }

  TwistedLevelGraph out;
  out.base.genus = genus;
  std::vector<int> new_index(g.num_half_edges(), -1);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (contracted[h]) continue;
    new_index[h] = out.base.num_half_edges();
    out.base.incidence.push_back(id[uf.find(g.incidence[h])]);
    out.base.leg_label.push_back(g.leg_label[h]);
    out.twist.push_back(t.twist[h]);
  }
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (!contracted[h]) out.base.involution.push_back(new_index[g.involution[h]]);
  }
  out.level = level;
  return out;
}

nlohmann::json to_json(const TwistedLevelGraph& t) {
  nlohmann::json j = graph::to_json(t.base);
  std::vector<std::array<int, 2>> twists;
  for (int h = 0; h < static_cast<int>(t.twist.size()); ++h) twists.push_back({h, t.twist[h]});
  j["twists"] = twists;
  if (t.level) {
    std::vector<std::array<int, 2>> levels;
    for (int v = 0; v < static_cast<int>(t.level->size()); ++v) {
      levels.push_back({v, (*t.level)[v]});
    }
    j["levels"] = levels;
  }
  return j;
}

TwistedLevelGraph twisted_from_json(const nlohmann::json& j) {
  TwistedLevelGraph t;
  t.base = graph::graph_from_json(j);
  t.twist.assign(t.base.num_half_edges(), 0);
  try {
    std::vector<bool> seen(t.twist.size(), false);
    for (const auto& entry : j.at("twists")) {
      const auto pair = entry.get<std::array<int, 2>>();
      if (pair[0] < 0 || pair[0] >= static_cast<int>(t.twist.size())) {
        throw std::invalid_argument("twist json: half-edge id out of range");
      }
      t.twist[pair[0]] = pair[1];
      seen[pair[0]] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw std::invalid_argument("twist json: some half-edge has no twist");
    }
    if (j.contains("levels")) {
      std::vector<int> lv(t.base.num_vertices(), 0);
      for (const auto& entry : j.at("levels")) {
        const auto pair = entry.get<std::array<int, 2>>();
        if (pair[0] < 0 || pair[0] >= t.base.num_vertices()) {
          throw std::invalid_argument("twist json: vertex id out of range");
        }
        lv[pair[0]] = pair[1];
      }
      t.level = std::move(lv);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("twist json: ") + e.what());
  }
  return t;
}

}  // namespace hodge::twist
