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

#ifndef HODGE_TWIST_HPP
#define HODGE_TWIST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodge/graph.hpp"

namespace hodge::twist {

using graph::StableGraph;

/// Prescribed vanishing order per marking; entry i - 1 belongs to marking i.
using ZeroProfile = std::vector<int>;

// A stable graph with an integer twist on every half-edge and, optionally, a
// level function onto {0, -1, ..., -d}.
//
// Across an edge (h, h') the twists satisfy mu(h) = -mu(h') - 2. The side with
// mu + 1 > 0 lies above the other one; mu = -1 on both sides is a horizontal
// edge. Vertices at negative levels carry meromorphic differentials, so their
// twists sum to 2g(v) - 2 exactly.
struct TwistedLevelGraph {
  StableGraph base;
  std::vector<int> twist;                 // half-edge -> mu
  std::optional<std::vector<int>> level;  // vertex -> non-positive level

  /// d, the number of levels below 0 (0 without a level function).
  int depth() const;

  friend bool operator==(const TwistedLevelGraph&, const TwistedLevelGraph&) = default;
};

/// Depth-1 level graph. With a single connected component the "all other
/// components trivial" condition holds automatically.
using BiColoredGraph = TwistedLevelGraph;
using TriColoredGraph = TwistedLevelGraph;

enum class TwistViolationKind {
  base_graph,
  malformed,
  edge_condition,
  leg_twist,
  vertex_degree,
  order,
  level_range,
  level_surjectivity,
  horizontal_edge,
};

const char* to_string(TwistViolationKind kind);

struct TwistViolation {
  TwistViolationKind kind;
  int index = -1;
  std::string message;
};

struct TwistValidation {
  std::vector<TwistViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(TwistViolationKind kind) const;
};

/// Checks every twisted/level-graph condition against the zero profile.
/// Horizontal edges are rejected when `forbid_horizontal` is set; by default
/// that is the case exactly when a level function is present.
TwistValidation validate_twist(const TwistedLevelGraph& t, const ZeroProfile& zeros,
                               std::optional<bool> forbid_horizontal = std::nullopt);

/// Product over edges of |mu(h) + 1|. Throws std::domain_error on a
/// horizontal edge.
std::int64_t multiplicity(const TwistedLevelGraph& t);

/// Sum over vertices of (sum of twists at v) - (2g(v) - 2). Equals
/// |Z| - (2g - 2) for any twist satisfying the edge condition.
int degree_defect(const TwistedLevelGraph& t);

enum class Anchoring {
  down,           // the anchor marking sits at level -1
  both,           // anchor and second marking both at level -1
  split,          // anchor at level -1, second marking at level 0
  split_literal,  // anchor at level -1 *and* at level 0 (always empty)
};

struct BicoloredQuery {
  Anchoring variant = Anchoring::down;
  int anchor = 1;
  int second = 0;      // only for both / split / split_literal
  int max_loops = -1;  // -1: no bound beyond the genus
};

/// One representative per isomorphism class (isomorphisms commute with twist
/// and level) of depth-1 level graphs of genus g compatible with `zeros`,
/// sorted by decorated canonical bytes. Throws std::invalid_argument on a
/// negative zero, an anchor outside 1..n, or coinciding anchors.
std::vector<BiColoredGraph> enumerate_bicolored(int g, const ZeroProfile& zeros,
                                                const BicoloredQuery& query);

/// Depth-2 level graphs with marking `lower` at level -2 and `middle` at
/// level -1. Empty when fewer than two markings exist.
std::vector<TriColoredGraph> enumerate_tricolored(int g, const ZeroProfile& zeros,
                                                  int lower, int middle,
                                                  int max_loops = -1);

/// Canonical bytes of a twisted (level) graph; isomorphisms must preserve
/// twists and levels.
graph::CanonicalLabeling canonical_labeling(const TwistedLevelGraph& t);

/// Relabels to the canonical representative.
TwistedLevelGraph canonical_representative(const TwistedLevelGraph& t);

/// The single-edge graph with a genus-g vertex at level 0 and a genus-0 vertex
/// at level -1 carrying exactly the markings in `bubble` (1-based labels).
BiColoredGraph rt_bubble_graph(int g, const ZeroProfile& zeros,
                               const std::vector<int>& bubble);

/// When `t` has the rational-tails shape of rt_bubble_graph, returns the
/// markings on its level -1 vertex.
std::optional<std::vector<int>> rt_bubble_markings(const TwistedLevelGraph& t);

/// Contracts every edge between levels 0 and -1 and shifts lower levels up
/// by one.
TwistedLevelGraph collapse_top_levels(const TwistedLevelGraph& t);

nlohmann::json to_json(const TwistedLevelGraph& t);
TwistedLevelGraph twisted_from_json(const nlohmann::json& j);

}  // namespace hodge::twist

#endif  // HODGE_TWIST_HPP
