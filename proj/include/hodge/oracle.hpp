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

#ifndef HODGE_ORACLE_HPP
#define HODGE_ORACLE_HPP

// Slow reference implementations, written without any of the refinement or
// degeneration machinery, used to cross-check the fast code paths. Only
// suitable for very small inputs (a handful of vertices and edges).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hodge/graph.hpp"
#include "hodge/twist.hpp"

namespace hodge::oracle {

/// Isomorphism invariant computed by minimising over all vertex
/// permutations. Equal keys <=> isomorphic graphs.
std::string brute_force_key(const graph::StableGraph& g);
std::string brute_force_key(const twist::TwistedLevelGraph& t);

/// Every incidence structure with at most 2g - 2 + n vertices and h^1 <= g,
/// filtered by validate(), one representative per brute_force_key.
std::vector<graph::StableGraph> stable_graphs(int g, int n);

/// Automorphisms by backtracking over half-edge bijections.
std::uint64_t automorphism_count(const graph::StableGraph& g);

/// Depth-d level graphs on the oracle's stable graphs: every surjective level
/// map, every twist in [-|Z| - 4, |Z| + 2] on each edge, kept when
/// validate_twist() accepts and `accept(levels, leg_vertex)` holds.
std::vector<twist::TwistedLevelGraph> level_graphs(
    int g, const twist::ZeroProfile& zeros, int depth,
    const std::function<bool(const std::vector<int>& levels,
                             const std::vector<int>& leg_vertex)>& accept);

std::vector<twist::TwistedLevelGraph> bicolored(int g, const twist::ZeroProfile& zeros,
                                                const twist::BicoloredQuery& q);

}  // namespace hodge::oracle

#endif  // HODGE_ORACLE_HPP
