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
#include <stdexcept>

#include "hodge/graph.hpp"

namespace hodge::graph {

nlohmann::json to_json(const StableGraph& g) {
  std::vector<std::array<int, 2>> legs, edges;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int o = g.involution[h];
    if (o == h) {
      legs.push_back({h, g.leg_label[h]});
    } else if (h < o) {
      edges.push_back({h, o});
    }
  }
  std::sort(legs.begin(), legs.end());
  std::sort(edges.begin(), edges.end());
  nlohmann::json j;
  j["genus_list"] = g.genus;
  j["legs"] = legs;
  j["edges"] = edges;
  j["incidence"] = g.incidence;
  return j;
}

StableGraph graph_from_json(const nlohmann::json& j) {
  StableGraph g;
  try {
    g.genus = j.at("genus_list").get<std::vector<int>>();
    g.incidence = j.at("incidence").get<std::vector<int>>();
    const int nh = g.num_half_edges();
    g.involution.assign(nh, -1);
    g.leg_label.assign(nh, 0);
    auto check = [nh](int h) {
      if (h < 0 || h >= nh) throw std::invalid_argument("half-edge id out of range");
    };
    for (const auto& leg : j.at("legs")) {
      const auto pair = leg.get<std::array<int, 2>>();
      check(pair[0]);
      g.involution[pair[0]] = pair[0];
      g.leg_label[pair[0]] = pair[1];
    }
    for (const auto& edge : j.at("edges")) {
      const auto pair = edge.get<std::array<int, 2>>();
      check(pair[0]);
      check(pair[1]);
      g.involution[pair[0]] = pair[1];
      g.involution[pair[1]] = pair[0];
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph json: ") + e.what());
  }
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.involution[h] < 0) {
      throw std::invalid_argument("graph json: half-edge " + std::to_string(h) +
                                  " is neither a leg nor part of an edge");
    }
  }
  return g;
}

std::string canonical_json(const StableGraph& g) { return to_json(g).dump(); }

}  // namespace hodge::graph
