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

#include "verify.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hodge/coeff.hpp"
#include "hodge/graph.hpp"
#include "hodge/oracle.hpp"
#include "hodge/rt.hpp"
#include "parallel.hpp"

namespace hodge::cli {
namespace {

std::string show(const twist::ZeroProfile& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + std::to_string(z[i]);
  return s + ")";
}

void fail(Check& c, const std::string& why) {
  if (c.passed) c.detail = why;
  c.passed = false;
}

std::set<std::string> keys(const std::vector<twist::TwistedLevelGraph>& v) {
  std::set<std::string> out;
  for (const auto& t : v) out.insert(oracle::brute_force_key(t));
  return out;
}

// Every xi coefficient pushed down to M_{g,1}; the order-independent
// fingerprint of alpha(g, Z).
std::map<int, rt::RTClass> pushed(const rt::XiPoly& p) {
  std::map<int, rt::RTClass> out;
  for (const auto& [k, c] : p.coefficients()) {
    rt::RTClass r = c;
    while (r.markings() > 1) r = rt::forget_last(r);
    out.emplace(k, std::move(r));
  }
  return out;
}

std::vector<std::vector<int>> all_orders(const twist::ZeroProfile& z) {
  std::vector<int> order = rt::default_increment_order(z);
  std::sort(order.begin(), order.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace

std::vector<twist::ZeroProfile> profiles(int n, int max_size) {
  std::vector<twist::ZeroProfile> out;
  twist::ZeroProfile z(n, 0);
  std::function<void(int, int)> fill = [&](int i, int left) {
    if (i == n) {
      out.push_back(z);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      z[i] = v;
      fill(i + 1, left - v);
    }
  };
  fill(0, max_size);
  return out;
}

std::vector<Check> verify_graphs(const VerifyBounds& b) {
  std::vector<std::pair<int, int>> cells;
  for (int g = 0; 3 * g - 3 <= b.dim; ++g) {
    for (int n = 0; 3 * g - 3 + n <= b.dim; ++n) {
      if (2 * g - 2 + n > 0) cells.push_back({g, n});
    }
  }
  return parallel_map(cells, b.jobs, [](const std::pair<int, int>& cell) {
    const auto [g, n] = cell;
    Check c{"graphs g=" + std::to_string(g) + " n=" + std::to_string(n)};
    const auto fast = graph::enumerate_stable_graphs(g, n, g);
    const auto slow = oracle::stable_graphs(g, n);
    if (fast.size() != slow.size()) {
      fail(c, "enumerated " + std::to_string(fast.size()) + " classes, oracle has " +
                  std::to_string(slow.size()));
    }
    std::set<std::string> fast_forms, slow_forms;
    for (const auto& x : fast) {
      if (!graph::validate(x, g).ok()) fail(c, "enumerated graph fails validation");
      const auto form = graph::canonical_form(x);
      fast_forms.insert(form.bytes);
      if (form.automorphism_count != oracle::automorphism_count(x)) {
        fail(c, "automorphism count differs from brute force for " + graph::canonical_json(x));
      }
    }
    for (const auto& x : slow) slow_forms.insert(graph::canonical_form(x).bytes);
    if (fast_forms != slow_forms) fail(c, "canonical forms differ from the oracle");
    if (fast_forms.size() != fast.size()) fail(c, "duplicate isomorphism class in output");
    return c;
  });
}

std::vector<Check> verify_twists(const VerifyBounds& b) {
  struct Case {
    int g, n;
  };
  std::vector<Case> cases;
  for (int g = 1; g <= 2; ++g) {
    for (int n = 1; 3 * g - 3 + n <= std::min(b.dim, 3); ++n) cases.push_back({g, n});
  }
  auto checks = parallel_map(cases, b.jobs, [](const Case& k) {
    Check c{"bicolored g=" + std::to_string(k.g) + " n=" + std::to_string(k.n)};
    for (const auto& z : profiles(k.n, k.n >= 3 ? 2 : 3)) {
      // One oracle run per profile, filtered per anchoring below.
      const auto all = oracle::level_graphs(k.g, z, 1, [](const auto&, const auto&) { return true; });
      std::vector<twist::BicoloredQuery> queries{{twist::Anchoring::down, 1, 0}};
      if (k.n >= 2) {
        queries.push_back({twist::Anchoring::both, 1, 2});
        queries.push_back({twist::Anchoring::split, 1, 2});
        queries.push_back({twist::Anchoring::split_literal, 1, 2});
      }
      for (const auto& q : queries) {
        std::vector<twist::TwistedLevelGraph> expected;
        for (const auto& t : all) {
          std::vector<int> at(k.n + 1);
          for (int h = 0; h < t.base.num_half_edges(); ++h) {
            if (t.base.is_leg(h)) at[t.base.leg_label[h]] = t.base.incidence[h];
          }
          const auto& lv = *t.level;
          const bool down = lv[at[q.anchor]] == -1;
          bool keep = false;
          switch (q.variant) {
            case twist::Anchoring::down: keep = down; break;
            case twist::Anchoring::both: keep = down && lv[at[q.second]] == -1; break;
            case twist::Anchoring::split: keep = down && lv[at[q.second]] == 0; break;
            case twist::Anchoring::split_literal: keep = false; break;
          }
          if (keep) expected.push_back(t);
        }
        const auto got = twist::enumerate_bicolored(k.g, z, q);
        if (keys(got) != keys(expected) || got.size() != expected.size()) {
          fail(c, "Z=" + show(z) + ": enumerator returned " + std::to_string(got.size()) +
                      " classes, oracle " + std::to_string(expected.size()));
        }
        for (const auto& t : got) {
          if (!twist::validate_twist(t, z).ok()) fail(c, "Z=" + show(z) + ": invalid output");
          if (twist::multiplicity(t) <= 0) fail(c, "Z=" + show(z) + ": non-positive multiplicity");
        }
      }
    }
    return c;
  });

  if (b.dim >= 3) {
    Check c{"tricolored g=1 n=3"};
    for (const auto& z : profiles(3, 2)) {
      const auto expected = oracle::level_graphs(
          1, z, 2, [](const std::vector<int>& lv, const std::vector<int>& at) {
            return lv[at[1]] == -2 && lv[at[2]] == -1;
          });
      const auto got = twist::enumerate_tricolored(1, z, 1, 2);
      if (keys(got) != keys(expected) || got.size() != expected.size()) {
        fail(c, "Z=" + show(z) + ": enumerator returned " + std::to_string(got.size()) +
                    " classes, oracle " + std::to_string(expected.size()));
      }
    }
    checks.push_back(c);
  }
  return checks;
}

std::vector<Check> verify_rt(const VerifyBounds& b) {
  const int gmax = b.genus_max < 0 ? 3 : b.genus_max;
  const int size = b.max_size;
  std::vector<Check> out;

  {
    Check c{"alpha product formula"};
    for (int g = 1; g <= gmax; ++g) {
      rt::XiPoly expected = rt::XiPoly::one(g, 1);
      for (int z = 0; z <= size; ++z) {
        if (z > 0) {
          rt::XiPoly next = expected.times_xi();
          next += rt::scale(rt::mul_psi(expected, rt::Site::at_marking(1)), z);
          expected = std::move(next);
        }
        if (!(rt::alpha_rt(g, {z}) == expected)) {
          fail(c, "g=" + std::to_string(g) + " z=" + std::to_string(z));
        }
      }
    }
    out.push_back(c);
  }

  struct Case {
    int g;
    twist::ZeroProfile z;
  };
  std::vector<Case> cases;
  for (int g = 1; g <= gmax; ++g) {
    for (int n = 1; n <= 3; ++n) {
      for (auto& z : profiles(n, size)) cases.push_back({g, std::move(z)});
    }
  }

  // Default order: homogeneity, monic top coefficient, delta provenance.
  auto shape = parallel_map(cases, b.jobs, [](const Case& k) {
    std::string err;
    rt::AlphaOptions opts;
    opts.observer = [&](const rt::IncrementRecord& r) {
      const auto t = twist::rt_bubble_graph(k.g, r.before, rt::markings_of(r.bubble));
      if (!twist::validate_twist(t, r.before).ok() || twist::multiplicity(t) != r.coefficient) {
        if (err.empty()) err = "delta coefficient mismatch";
      }
    };
    const auto a = rt::alpha_rt(k.g, k.z, opts);
    int size = 0;
    for (int x : k.z) size += x;
    std::string shape_err;
    if (!(a.coefficient(size) == rt::RTClass::one(k.g, static_cast<int>(k.z.size())))) {
      shape_err = "top xi coefficient is not 1";
    }
    for (const auto& [p, c] : a.coefficients()) {
      const auto d = c.degrees();
      if (d.size() != 1 || d[0] != size - p) shape_err = "xi^" + std::to_string(p) + " not homogeneous";
    }
    return std::pair<std::string, std::string>{shape_err, err};
  });
  Check homog{"alpha homogeneous and monic"}, prov{"delta coefficients equal twist multiplicity"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string where = "g=" + std::to_string(cases[i].g) + " Z=" + show(cases[i].z) + ": ";
    if (!shape[i].first.empty()) fail(homog, where + shape[i].first);
    if (!shape[i].second.empty()) fail(prov, where + shape[i].second);
  }

  // The rational-tails bubble graph is one of twist-core's bi-colored graphs.
  for (int g = 1; g <= std::min(gmax, 2); ++g) {
    for (const auto& z : profiles(2, 3)) {
      for (int anchor = 1; anchor <= 2; ++anchor) {
        const auto bic = keys(twist::enumerate_bicolored(g, z, {twist::Anchoring::down, anchor, 0}));
        const auto t = twist::rt_bubble_graph(g, z, {1, 2});
        if (!bic.count(oracle::brute_force_key(t))) {
          fail(prov, "g=" + std::to_string(g) + " Z=" + show(z) +
                         ": bubble graph missing from the bi-colored enumeration");
        }
      }
    }
  }
  out.push_back(homog);
  out.push_back(prov);

  auto orders = parallel_map(cases, b.jobs, [](const Case& k) -> std::string {
    std::map<int, rt::RTClass> ref;
    bool first = true;
    for (const auto& order : all_orders(k.z)) {
      auto p = pushed(rt::alpha_rt(k.g, k.z, {order, {}, {}}));
      if (first) {
        ref = std::move(p);
        first = false;
      } else if (p != ref) {
        return "pushforward differs between increment orders";
      }
    }
    return {};
  });
  Check order_check{"increment order independence"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!orders[i].empty()) {
      fail(order_check, "g=" + std::to_string(cases[i].g) + " Z=" + show(cases[i].z) + ": " + orders[i]);
    }
  }
  // a_symbolic itself over every order of (z, 2, ..., 2).
  for (int g = 1; g <= gmax; ++g) {
    for (int n = 0; n <= 3; ++n) {
      for (int z = 0; z + 2 * n <= size; ++z) {
        twist::ZeroProfile zeros(1, z);
        zeros.insert(zeros.end(), n, 2);
        const Rational ref = rt::a_symbolic(g, z, n);
        for (const auto& order : all_orders(zeros)) {
          if (rt::a_symbolic(g, z, n, order) != ref) {
            fail(order_check, "a_symbolic(" + std::to_string(g) + "," + std::to_string(z) + "," +
                                  std::to_string(n) + ") depends on the order");
          }
        }
      }
    }
  }
  out.push_back(order_check);

  {
    Check c{"delta products commute"};
    const int n = 5;
    std::vector<rt::Mask> sets;
    for (rt::Mask m = 1; m < (1U << n); ++m) {
      if (std::popcount(m) >= 2) sets.push_back(m);
    }
    const auto one = rt::RTClass::one(1, n);
    for (rt::Mask x : sets) {
      for (rt::Mask y : sets) {
        if (y < x) continue;
        if (!(rt::mul_delta(rt::mul_delta(one, x), y) == rt::mul_delta(rt::mul_delta(one, y), x))) {
          fail(c, "delta" + std::to_string(x) + " * delta" + std::to_string(y));
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Check> verify_coeffs(const VerifyBounds& b) {
  const int gmax = b.genus_max < 0 ? 12 : b.genus_max;
  std::vector<Check> out;
  coeff::CoeffTable table;

  Check closed{"a_g = 2^(g-1) g"}, rec{"a_g = 2 a_(g-1) + 2^(g-1)"};
  for (int g = 1; g <= gmax; ++g) {
    const Rational a = coeff::a_g(g);
    if (a != pow2(g - 1) * g) fail(closed, "g=" + std::to_string(g) + ": a_g = " + to_string(a));
    if (a != coeff::a_rec(table, g, 1, g - 1)) fail(closed, "g=" + std::to_string(g) + ": a_rec disagrees");
    if (g > 1 && a != 2 * coeff::a_g(g - 1) + pow2(g - 1)) fail(rec, "g=" + std::to_string(g));
  }
  out.push_back(closed);
  out.push_back(rec);

  Check spin{"a(g,0,g-1) = odd spin count"};
  for (int g = 1; g <= gmax; ++g) {
    const Rational expect = pow2(g - 1) * (pow2(g) - 1);
    if (coeff::a_rec(table, g, 0, g - 1) != expect || coeff::odd_spin_count(g) != expect) {
      fail(spin, "g=" + std::to_string(g));
    }
  }
  out.push_back(spin);

  Check uw{"u/w sequences"};
  for (int g = 1; g <= gmax; ++g) {
    for (int n = 0; n <= g - 1; ++n) {
      const std::string at = "g=" + std::to_string(g) + " n=" + std::to_string(n);
      if (coeff::u_seq(g, n) != coeff::u_closed_form(g, n)) fail(uw, at + ": closed form");
      if (coeff::u_seq(g, n) != coeff::a_rec(table, g, g - n, n)) fail(uw, at + ": u vs a_rec");
      if (coeff::w_seq(g, n) != coeff::a_rec(table, g, g - n - 1, n)) fail(uw, at + ": w vs a_rec");
    }
  }
  out.push_back(uw);

  struct Cell {
    int g, z, n;
  };
  std::vector<Cell> cells;
  for (int g = 1; g <= std::min(gmax, 4); ++g) {
    for (int n = 0; 2 * n <= 8; ++n) {
      for (int z = 0; z + 2 * n <= 8; ++z) {
        if (coeff::reachable(g, z, n)) cells.push_back({g, z, n});
      }
    }
  }
  const auto sym = parallel_map(cells, b.jobs, [](const Cell& c) { return rt::a_symbolic(c.g, c.z, c.n); });
  Check routes{"a_rec = a_symbolic"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& [g, z, n] = cells[i];
    const Rational r = coeff::a_rec(table, g, z, n);
    if (r != sym[i]) {
      fail(routes, "a(" + std::to_string(g) + "," + std::to_string(z) + "," + std::to_string(n) +
                       "): recursion " + to_string(r) + ", symbolic " + to_string(sym[i]));
    }
  }
  out.push_back(routes);

  Check memo{"memo determinism"};
  coeff::CoeffTable fresh;
  for (const auto& [cell, entry] : table.snapshot()) {
    const auto& [g, z, n] = cell;
    coeff::a_rec(fresh, g, z, n);
  }
  if (fresh.serialize() != table.serialize()) fail(memo, "recomputed table differs");
  out.push_back(memo);
  return out;
}

}  // namespace hodge::cli
