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
#include <numeric>
#include <stdexcept>

#include "hodge/graph.hpp"

namespace hodge::graph {

int StableGraph::num_legs() const {
  int legs = 0;
  for (int h = 0; h < num_half_edges(); ++h) legs += is_leg(h) ? 1 : 0;
  return legs;
}

int StableGraph::num_edges() const { return (num_half_edges() - num_legs()) / 2; }

int StableGraph::valence(int v) const {
  return static_cast<int>(std::count(incidence.begin(), incidence.end(), v));
}

StableGraph make_graph(std::vector<int> genus,
                       const std::vector<std::pair<int, int>>& legs,
                       const std::vector<std::pair<int, int>>& edges) {
  StableGraph g;
  g.genus = std::move(genus);
  for (const auto& [v, label] : legs) {
    const int h = g.num_half_edges();
    g.incidence.push_back(v);
    g.involution.push_back(h);
    g.leg_label.push_back(label);
  }
  for (const auto& [v, w] : edges) {
    const int h = g.num_half_edges();
    g.incidence.push_back(v);
    g.incidence.push_back(w);
    g.involution.push_back(h + 1);
    g.involution.push_back(h);
    g.leg_label.push_back(0);
    g.leg_label.push_back(0);
  }
  return g;
}

int loop_number(const StableGraph& g) {
  return g.num_edges() - g.num_vertices() + 1;
}

int genus(const StableGraph& g) {
  return loop_number(g) + std::accumulate(g.genus.begin(), g.genus.end(), 0);
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::malformed: return "malformed";
    case ViolationKind::non_involutive: return "non-involutive";
    case ViolationKind::bad_leg_labels: return "bad leg labels";
    case ViolationKind::unstable_vertex: return "unstable vertex";
    case ViolationKind::disconnected: return "disconnected";
    case ViolationKind::genus_mismatch: return "genus mismatch";
  }
  return "unknown";
}

bool ValidationResult::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

namespace {

void add(ValidationResult& r, ViolationKind kind, int index, std::string msg) {
  r.violations.push_back({kind, index, std::move(msg)});
}

// Checks that every map is total and in range; the remaining checks assume it.
bool structurally_sound(const StableGraph& g, ValidationResult& r) {
  const int nh = g.num_half_edges();
  if (static_cast<int>(g.involution.size()) != nh ||
      static_cast<int>(g.leg_label.size()) != nh) {
    add(r, ViolationKind::malformed, -1,
        "incidence, involution and leg_label sizes differ");
    return false;
  }
  if (g.num_vertices() == 0) {
    add(r, ViolationKind::malformed, -1, "graph has no vertices");
    return false;
  }
  bool sound = true;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.genus[v] < 0) {
      add(r, ViolationKind::malformed, v,
          "vertex " + std::to_string(v) + " has negative genus");
      sound = false;
    }
  }
  for (int h = 0; h < nh; ++h) {
    if (g.incidence[h] < 0 || g.incidence[h] >= g.num_vertices() ||
        g.involution[h] < 0 || g.involution[h] >= nh) {
      add(r, ViolationKind::malformed, h,
          "half-edge " + std::to_string(h) + " maps out of range");
      sound = false;
    }
  }
  return sound;
}

}  // namespace

ValidationResult validate(const StableGraph& g, std::optional<int> expected_genus) {
  ValidationResult r;
  if (!structurally_sound(g, r)) return r;
  const int nh = g.num_half_edges();

  bool involutive = true;
  for (int h = 0; h < nh; ++h) {
    if (g.involution[g.involution[h]] != h) {
      add(r, ViolationKind::non_involutive, h,
          "involution is not an involution at half-edge " + std::to_string(h));
      involutive = false;
    }
  }

  std::vector<int> labels;
  for (int h = 0; h < nh; ++h) {
    const bool leg = g.involution[h] == h;
    if (leg) {
      labels.push_back(g.leg_label[h]);
    } else if (g.leg_label[h] != 0) {
      add(r, ViolationKind::bad_leg_labels, h,
          "edge half-edge " + std::to_string(h) + " carries a leg label");
    }
  }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != static_cast<int>(i) + 1) {
      add(r, ViolationKind::bad_leg_labels, -1,
          "leg labels are not a bijection onto 1..n");
      break;
    }
  }

  for (int v = 0; v < g.num_vertices(); ++v) {
    const int stab = 2 * g.genus[v] - 2 + g.valence(v);
    if (stab <= 0) {
      add(r, ViolationKind::unstable_vertex, v,
          "unstable vertex " + std::to_string(v) + ": 2g-2+n = " +
              std::to_string(stab));
    }
  }

  if (involutive) {
    std::vector<std::vector<int>> adj(g.num_vertices());
    for (int h = 0; h < nh; ++h) {
      if (g.involution[h] != h) {
        adj[g.incidence[h]].push_back(g.incidence[g.involution[h]]);
      }
    }
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!seen[v]) {
        add(r, ViolationKind::disconnected, v,
            "vertex " + std::to_string(v) + " is not connected to vertex 0");
      }
    }
    if (expected_genus && genus(g) != *expected_genus) {
      add(r, ViolationKind::genus_mismatch, -1,
          "genus is " + std::to_string(genus(g)) + ", expected " +
              std::to_string(*expected_genus));
    }
  }
  return r;
}

StableGraph permute(const StableGraph& g, const std::vector<int>& vertex_perm,
                    const std::vector<int>& half_edge_perm) {
  StableGraph out;
  out.genus.resize(g.genus.size());
  out.incidence.resize(g.incidence.size());
  out.involution.resize(g.involution.size());
  out.leg_label.resize(g.leg_label.size());
  for (int v = 0; v < g.num_vertices(); ++v) out.genus[vertex_perm[v]] = g.genus[v];
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int nh = half_edge_perm[h];
    out.incidence[nh] = vertex_perm[g.incidence[h]];
    out.involution[nh] = half_edge_perm[g.involution[h]];
    out.leg_label[nh] = g.leg_label[h];
  }
  return out;
}

}  // namespace hodge::graph
