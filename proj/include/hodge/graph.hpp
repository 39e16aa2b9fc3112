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

#ifndef HODGE_GRAPH_HPP
#define HODGE_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hodge::graph {

// Dual graph of a nodal marked curve.
//
// Half-edges are identified by position only; the semantic data is the
// vertex genus, the incidence map, the involution (2-cycles are edges, fixed
// points are legs) and the marking label carried by each leg. Two graphs are
// isomorphic when some bijection of vertices and half-edges preserves all of
// it, leg labels included.
struct StableGraph {
  std::vector<int> genus;       // vertex -> genus
  std::vector<int> incidence;   // half-edge -> vertex
  std::vector<int> involution;  // half-edge -> half-edge
  std::vector<int> leg_label;   // half-edge -> marking in 1..n, 0 on edge halves

  int num_vertices() const { return static_cast<int>(genus.size()); }
  int num_half_edges() const { return static_cast<int>(incidence.size()); }
  int num_legs() const;
  int num_edges() const;
  int valence(int v) const;
  bool is_leg(int h) const { return involution[h] == h; }

  friend bool operator==(const StableGraph&, const StableGraph&) = default;
};

/// Builds a graph from per-vertex genera, legs given as (vertex, label) and
/// edges given as (vertex, vertex). Half-edges are numbered legs first (in the
/// given order), then two per edge.
StableGraph make_graph(std::vector<int> genus,
                       const std::vector<std::pair<int, int>>& legs,
                       const std::vector<std::pair<int, int>>& edges);

/// h^1 = |E| - |V| + 1.
int loop_number(const StableGraph& g);

/// h^1 plus the sum of vertex genera.
int genus(const StableGraph& g);

enum class ViolationKind {
  malformed,
  non_involutive,
  bad_leg_labels,
  unstable_vertex,
  disconnected,
  genus_mismatch,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int index = -1;  // offending vertex or half-edge, -1 for global conditions
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationResult validate(const StableGraph& g,
                          std::optional<int> expected_genus = std::nullopt);

struct CanonicalForm {
  std::string bytes;
  std::uint64_t automorphism_count = 0;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

// Extra isomorphism-invariant data attached to a graph. Both vectors are
// optional (empty means all zero). Used by twisted and level graphs: the
// vertex color carries the level, the half-edge label carries the twist.
struct Decoration {
  std::vector<int> vertex_color;
  std::vector<int> half_edge_label;
};

struct CanonicalLabeling {
  CanonicalForm form;
  std::vector<int> vertex_order;     // canonical vertex -> original vertex
  std::vector<int> half_edge_order;  // canonical half-edge -> original half-edge
};

/// Colour refinement plus individualisation search. Counts automorphisms on
/// the way; decorations must be preserved by isomorphisms. Throws
/// std::invalid_argument if `g` is not structurally sound.
CanonicalLabeling canonical_labeling(const StableGraph& g,
                                     const Decoration& deco = {});

CanonicalForm canonical_form(const StableGraph& g);

/// Relabels `g` along `labeling` (the canonical representative when the
/// labeling came from canonical_labeling(g)).
StableGraph apply_labeling(const StableGraph& g,
                           const CanonicalLabeling& labeling);

StableGraph canonical_representative(const StableGraph& g);

/// Permutes vertex and half-edge indices; leg labels are untouched.
/// vertex_perm[v] and half_edge_perm[h] give the new index of v and h.
StableGraph permute(const StableGraph& g, const std::vector<int>& vertex_perm,
                    const std::vector<int>& half_edge_perm);

/// One representative per isomorphism class of stable graphs of genus g with
/// n legs and at most max_loops loops, sorted by canonical bytes. Throws
/// std::invalid_argument when 2g - 2 + n <= 0.
std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int max_loops);

nlohmann::json to_json(const StableGraph& g);
StableGraph graph_from_json(const nlohmann::json& j);

/// Single-line JSON with every array sorted.
std::string canonical_json(const StableGraph& g);

}  // namespace hodge::graph

#endif  // HODGE_GRAPH_HPP
