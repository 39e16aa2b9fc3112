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

// Level graphs without horizontal edges, built on top of the stable graph
// enumeration. For each stable graph (no loops: a loop is always horizontal)
// every level assignment putting the endpoints of each edge on different
// levels is tried. Twists are then fixed level by level from the bottom: at a
// vertex below level 0 the half-edges going up take twists <= -2 and, together
// with the legs and the already fixed half-edges coming from below, must sum
// to 2g(v) - 2. Level-0 vertices impose nothing, every twist there is forced
// by the edge condition.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hodge/twist.hpp"

namespace hodge::twist {
namespace {

void check_profile(const ZeroProfile& zeros) {
  for (int z : zeros) {
    if (z < 0) throw std::invalid_argument("zero profile has a negative entry");
  }
}

void check_marking(int i, int n, const char* what) {
  if (i < 1 || i > n) {
    throw std::invalid_argument(std::string(what) + " marking " + std::to_string(i) +
                                " out of range 1.." + std::to_string(n));
  }
}

std::vector<int> leg_vertex(const StableGraph& g) {
  std::vector<int> where(g.num_legs() + 1, -1);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.is_leg(h)) where[g.leg_label[h]] = g.incidence[h];
  }
  return where;
}

// Calls `emit` for every tuple of `count` integers <= -2 summing to `target`.
void twist_tuples(int count, int target, std::vector<int>& acc,
                  const std::function<void()>& emit) {
  if (count == 0) {
    if (target == 0) emit();
    return;
  }
  // The other count - 1 entries are each <= -2.
  for (int mu = -2; mu >= target + 2 * (count - 1); --mu) {
    acc.push_back(mu);
    twist_tuples(count - 1, target - mu, acc, emit);
    acc.pop_back();
  }
}

void assign_twists(const StableGraph& g, const std::vector<int>& levels,
                   const ZeroProfile& zeros,
                   const std::function<void(const std::vector<int>&)>& emit) {
  const int nh = g.num_half_edges();
  std::vector<int> order;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (levels[v] < 0) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return levels[a] < levels[b]; });

  std::vector<int> twist(nh, 0);
  std::vector<bool> fixed(nh, false);
  for (int h = 0; h < nh; ++h) {
    if (g.is_leg(h)) {
      twist[h] = zeros[g.leg_label[h] - 1];
      fixed[h] = true;
    }
  }

  std::function<void(std::size_t)> step = [&](std::size_t k) {
    if (k == order.size()) {
      emit(twist);
      return;
    }
    const int v = order[k];
    int known = 0;
    std::vector<int> up;
    for (int h = 0; h < nh; ++h) {
      if (g.incidence[h] != v) continue;
      if (fixed[h]) {
        known += twist[h];
      } else {
        up.push_back(h);  // edges to lower vertices were fixed earlier
      }
    }
    std::vector<int> acc;
    twist_tuples(static_cast<int>(up.size()), 2 * g.genus[v] - 2 - known, acc, [&] {
      for (std::size_t i = 0; i < up.size(); ++i) {
        const int h = up[i], o = g.involution[h];
        twist[h] = acc[i];
        twist[o] = -acc[i] - 2;
        fixed[h] = fixed[o] = true;
      }
      step(k + 1);
      for (int h : up) fixed[h] = fixed[g.involution[h]] = false;
    });
  };
  step(0);
}

// Every twisted level graph of the given depth, deduplicated, filtered by
// `accept` on the leg positions.
std::vector<TwistedLevelGraph> enumerate_level_graphs(
    int g, const ZeroProfile& zeros, int depth, int max_loops,
    const std::function<bool(const std::vector<int>& levels,
                             const std::vector<int>& leg_at)>& accept) {
  const int n = static_cast<int>(zeros.size());
  if (2 * g - 2 + n <= 0) return {};
  if (max_loops < 0) max_loops = g;
  std::map<std::string, TwistedLevelGraph> found;

  for (const StableGraph& base : graph::enumerate_stable_graphs(g, n, max_loops)) {
    const int nv = base.num_vertices();
    if (nv < depth + 1) continue;
    bool has_loop = false;
    for (int h = 0; h < base.num_half_edges(); ++h) {
      const int o = base.involution[h];
      if (o != h && base.incidence[o] == base.incidence[h]) has_loop = true;
    }
    if (has_loop) continue;
    const std::vector<int> leg_at = leg_vertex(base);

    std::vector<int> levels(nv, 0);
    std::function<void(int)> place = [&](int v) {
      if (v == nv) {
        std::vector<bool> hit(depth + 1, false);
        for (int l : levels) hit[-l] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) return;
        for (int h = 0; h < base.num_half_edges(); ++h) {
          const int o = base.involution[h];
          if (o != h && levels[base.incidence[h]] == levels[base.incidence[o]]) return;
        }
        if (!accept(levels, leg_at)) return;
        assign_twists(base, levels, zeros, [&](const std::vector<int>& twist) {
          TwistedLevelGraph t{base, twist, levels};
          // Level-0 vertices are unconstrained by the construction; a
          // complete profile still pins their degree.
          if (!validate_twist(t, zeros).ok()) return;
          TwistedLevelGraph rep = canonical_representative(t);
          auto bytes = canonical_labeling(rep).form.bytes;
          found.emplace(std::move(bytes), std::move(rep));
        });
        return;
      }
      for (int l = 0; l >= -depth; --l) {
        levels[v] = l;
        place(v + 1);
      }
    };
    place(0);
  }

  std::vector<TwistedLevelGraph> out;
  for (auto& [bytes, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::vector<BiColoredGraph> enumerate_bicolored(int g, const ZeroProfile& zeros,
                                                const BicoloredQuery& q) {
  check_profile(zeros);
  const int n = static_cast<int>(zeros.size());
  check_marking(q.anchor, n, "anchor");
  if (q.variant != Anchoring::down) {
    check_marking(q.second, n, "second anchor");
    if (q.second == q.anchor) throw std::invalid_argument("anchors must be distinct");
  }
  return enumerate_level_graphs(
      g, zeros, 1, q.max_loops,
      [&](const std::vector<int>& levels, const std::vector<int>& leg_at) {
        const int a = levels[leg_at[q.anchor]];
        switch (q.variant) {
          case Anchoring::down: return a == -1;
          case Anchoring::both: return a == -1 && levels[leg_at[q.second]] == -1;
          case Anchoring::split: return a == -1 && levels[leg_at[q.second]] == 0;
          case Anchoring::split_literal: return a == -1 && a == 0;
        }
        return false;
      });
}

std::vector<TriColoredGraph> enumerate_tricolored(int g, const ZeroProfile& zeros,
                                                  int lower, int middle, int max_loops) {
  check_profile(zeros);
  const int n = static_cast<int>(zeros.size());
  if (n < 2) return {};
  check_marking(lower, n, "lower");
  check_marking(middle, n, "middle");
  if (lower == middle) throw std::invalid_argument("anchors must be distinct");
  return enumerate_level_graphs(
      g, zeros, 2, max_loops,
      [&](const std::vector<int>& levels, const std::vector<int>& leg_at) {
        return levels[leg_at[lower]] == -2 && levels[leg_at[middle]] == -1;
      });
}

}  // namespace hodge::twist
