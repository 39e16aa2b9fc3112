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
#include <random>

#include "doctest.h"
#include "hodge/rt.hpp"
#include "hodge/twist.hpp"

using namespace hodge;
using namespace hodge::rt;

namespace {

RTClass psi_power(int g, int n, int marking, int power) {
  RTClass c = RTClass::one(g, n);
  for (int k = 0; k < power; ++k) c = mul_psi(c, Site::at_marking(marking));
  return c;
}

RTClass delta(int g, int n, const std::vector<int>& set) {
  return mul_delta(RTClass::one(g, n), mask_of(set));
}

// The single term of a one-term class with unit coefficient.
BasisTerm only_term(const RTClass& c) {
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms().begin()->second == 1);
  return c.terms().begin()->first;
}

// A small zoo of classes on M_{g,4} built from the generators.
std::vector<RTClass> random_classes(int g, std::mt19937& rng, int count) {
  const int n = 4;
  std::vector<Mask> sets;
  for (Mask m = 1; m < (1U << n); ++m) {
    if (std::popcount(m) >= 2) sets.push_back(m);
  }
  std::vector<RTClass> out;
  while (static_cast<int>(out.size()) < count) {
    RTClass c = RTClass::one(g, n);
    const int steps = 1 + static_cast<int>(rng() % 3);
    for (int s = 0; s < steps; ++s) {
      if (rng() % 2) c = mul_psi(c, Site::at_marking(1 + static_cast<int>(rng() % n)));
      else c = mul_delta(c, sets[rng() % sets.size()]);
    }
    c += RTClass::one(g, n) * Rational(static_cast<long>(rng() % 5), 3);
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("mask helpers") {
  CHECK(mask_of({1, 3}) == 0b101U);
  CHECK(markings_of(0b1101U) == std::vector<int>{1, 3, 4});
  CHECK_THROWS_AS(mask_of({0}), std::invalid_argument);
}

TEST_CASE("mul_psi examples") {
  const auto one = RTClass::one(2, 3);
  CHECK(render(one) == "1");
  CHECK(render(mul_psi(one, Site::at_marking(1))) == "psi_1");
  CHECK(render(psi_power(2, 3, 1, 2)) == "psi_1^2");

  const auto d = delta(2, 3, {1, 2});
  const auto t = only_term(mul_psi(d, Site::at_marking(3)));
  CHECK(t.bubbles == std::vector<Mask>{0b011});
  CHECK(t.psi == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(t.degree() == 2);

  CHECK_THROWS_AS(mul_psi(one, Site::up(0b011)), std::invalid_argument);
  CHECK_THROWS_AS(mul_psi(one, Site::at_marking(4)), std::invalid_argument);
  CHECK_NOTHROW(mul_psi(d, Site::down(0b011)));
}

TEST_CASE("mul_delta examples") {
  const int g = 2, n = 3;
  const auto d12 = delta(g, n, {1, 2});
  const auto t = only_term(d12);
  CHECK(t.bubbles == std::vector<Mask>{0b011});
  CHECK(t.degree() == 1);
  CHECK(render(d12) == "delta[1,2]");

  SUBCASE("self-intersection") {
    const auto self = mul_delta(d12, 0b011);
    const auto expected = RTClass::zero(g, n) - mul_psi(d12, Site::up(0b011)) -
                          mul_psi(d12, Site::down(0b011));
    CHECK(self == expected);
    CHECK(render(self) == "-delta[1,2]*psi_h'[1,2] - delta[1,2]*psi_h[1,2]");
  }
  SUBCASE("nested chain") {
    const auto chain = only_term(mul_delta(d12, 0b111));
    CHECK(chain.bubbles == std::vector<Mask>{0b011, 0b111});
    CHECK(chain.degree() == 2);
    CHECK(mul_delta(d12, 0b111) == mul_delta(delta(g, n, {1, 2, 3}), 0b011));
    CHECK(integrate_to_point(mul_delta(d12, 0b111)) == 1);
  }
  SUBCASE("crossing sets kill the term") {
    CHECK(mul_delta(d12, 0b110).is_zero());
    CHECK(mul_delta(d12, 0b101).is_zero());
  }
  SUBCASE("psi of a marking moves onto the new bubble") {
    const auto moved = mul_delta(psi_power(g, n, 1, 1), 0b011);
    const auto m = only_term(moved);
    CHECK(m.psi == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(moved == mul_psi(d12, Site::at_marking(1)));
  }
  CHECK_THROWS_AS(mul_delta(RTClass::one(g, n), 0b001), std::invalid_argument);
  CHECK_THROWS_AS(mul_delta(RTClass::one(g, n), 0b1001), std::invalid_argument);
}

TEST_CASE("delta products commute on four markings") {
  const auto one = RTClass::one(1, 4);
  for (Mask x = 3; x < 16; ++x) {
    for (Mask y = 3; y < 16; ++y) {
      if (std::popcount(x) < 2 || std::popcount(y) < 2) continue;
      CHECK(mul_delta(mul_delta(one, x), y) == mul_delta(mul_delta(one, y), x));
    }
  }
}

TEST_CASE("forget_last examples") {
  for (int g = 1; g <= 3; ++g) {
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      if (2 * g - 2 + (n - 1) <= 0) {
        CHECK_THROWS_AS(forget_last(RTClass::one(g, n)), std::invalid_argument);
        continue;
      }
      CHECK(forget_last(RTClass::one(g, n)).is_zero());

      // psi_n^{m+1} pushes to kappa_m on the root.
      for (int m = 1; m <= 3; ++m) {
        const auto pushed = forget_last(psi_power(g, n, n, m + 1));
        const auto t = only_term(pushed);
        CHECK(t.bubbles.empty());
        CHECK(t.kappa.at(0) == std::vector<std::uint8_t>{static_cast<std::uint8_t>(m)});
        CHECK(pushed.markings() == n - 1);
      }
      // Dilaton: kappa_0 = 2g - 2 + (n - 1).
      const auto dil = forget_last(psi_power(g, n, n, 1));
      CHECK(dil.is_scalar());
      CHECK(dil.constant() == 2 * g - 2 + n - 1);
      if (n >= 2) {
        for (int i = 1; i < n; ++i) CHECK(forget_last(delta(g, n, {i, n})) == RTClass::one(g, n - 1));
      }
    }
  }
  // pi_* psi_1 = 1 on M_{g,2}: psi_1 differs from the pullback by delta_{12}.
  CHECK(forget_last(psi_power(2, 2, 1, 1)) == RTClass::one(2, 1));
  CHECK(render(forget_last(psi_power(2, 3, 3, 3))) == "kappa_2");
  CHECK_THROWS_AS(forget_last(RTClass::one(1, 0)), std::invalid_argument);
}

TEST_CASE("forget_last on a bubble contracts it or applies the string equation") {
  const int g = 2;
  // Marking n on a bubble of valence >= 4 with nothing to lower: fibre
  // dimension one, so the pushforward vanishes.
  CHECK(forget_last(delta(g, 3, {1, 2, 3})).is_zero());
  CHECK(forget_last(mul_delta(delta(g, 4, {1, 2, 3, 4}), mask_of({1, 2}))).is_zero());
  // String equation: psi_1 on the same bubble drops by one.
  CHECK(forget_last(mul_psi(delta(g, 3, {1, 2, 3}), Site::at_marking(1))) == delta(g, 2, {1, 2}));
  // Three-valent bubbles are contracted.
  CHECK(forget_last(mul_delta(delta(g, 4, {1, 2, 3, 4}), mask_of({3, 4}))) == delta(g, 3, {1, 2, 3}));
  CHECK(forget_last(mul_delta(delta(g, 4, {1, 2}), mask_of({3, 4}))) == delta(g, 3, {1, 2}));
  // ...and any decoration on them kills the term, except psi_h which moves
  // to the surviving child.
  CHECK(forget_last(mul_psi(delta(g, 3, {2, 3}), Site::at_marking(3))).is_zero());
  CHECK(forget_last(mul_psi(delta(g, 3, {2, 3}), Site::down(mask_of({2, 3})))).is_zero());
  CHECK(forget_last(mul_psi(delta(g, 3, {2, 3}), Site::up(mask_of({2, 3})))) == psi_power(g, 2, 2, 1));
}

TEST_CASE("operations are Q-linear") {
  std::mt19937 rng(20261016);
  const int g = 2;
  const auto pool = random_classes(g, rng, 12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> c(3);
    std::vector<const RTClass*> x(3);
    RTClass sum = RTClass::zero(g, 4);
    for (int k = 0; k < 3; ++k) {
      c[k] = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
      x[k] = &pool[rng() % pool.size()];
      sum += *x[k] * c[k];
    }
    auto combine = [&](auto op) {
      RTClass out = op(*x[0]) * c[0];
      out += op(*x[1]) * c[1];
      out += op(*x[2]) * c[2];
      return out;
    };
    const Site s = Site::at_marking(1 + static_cast<int>(rng() % 4));
    const Mask set = 0b0110;
    CHECK(mul_psi(sum, s) == combine([&](const RTClass& a) { return mul_psi(a, s); }));
    CHECK(mul_delta(sum, set) == combine([&](const RTClass& a) { return mul_delta(a, set); }));
    CHECK(forget_last(sum) == combine([](const RTClass& a) { return forget_last(a); }));
  }
}

TEST_CASE("alpha_rt base case and product formula") {
  for (int g = 1; g <= 3; ++g) {
    CHECK(alpha_rt(g, {0}) == XiPoly::one(g, 1));
    CHECK(alpha_rt(g, {0, 0, 0}) == XiPoly::one(g, 3));
    XiPoly expected = XiPoly::one(g, 1);
    for (int z = 1; z <= 6; ++z) {
      XiPoly next = expected.times_xi();
      next += scale(mul_psi(expected, Site::at_marking(1)), z);
      expected = next;
      CHECK(alpha_rt(g, {z}) == expected);
    }
  }
  CHECK(render(alpha_rt(3, {2})) == "xi^2 + 3*xi*psi_1 + 2*psi_1^2");
  CHECK(render(alpha_rt(2, {0, 0})) == "1");
}

TEST_CASE("alpha_rt is monic and homogeneous") {
  for (const twist::ZeroProfile& z :
       {twist::ZeroProfile{1, 1}, twist::ZeroProfile{2, 1}, twist::ZeroProfile{1, 0, 2},
        twist::ZeroProfile{3, 2}, twist::ZeroProfile{1, 1, 1}}) {
    const int size = std::accumulate(z.begin(), z.end(), 0);
    const auto a = alpha_rt(2, z);
    CHECK(a.xi_degree() == size);
    CHECK(a.coefficient(size) == RTClass::one(2, static_cast<int>(z.size())));
    for (const auto& [k, c] : a.coefficients()) CHECK(c.degrees() == std::vector<int>{size - k});
  }
}

TEST_CASE("alpha(2, (1,1)) agrees across increment orders after pushforward") {
  const auto a = alpha_rt(2, {1, 1}, {{1, 2}, {}, {}});
  const auto b = alpha_rt(2, {1, 1}, {{2, 1}, {}, {}});
  for (int k = 0; k <= 2; ++k) {
    RTClass pa = a.coefficient(k), pb = b.coefficient(k);
    if (pa.degrees().empty() && pb.degrees().empty()) continue;
    CHECK(forget_last(pa) == forget_last(pb));
  }
  CHECK(default_increment_order({2, 0, 1}) == std::vector<int>{3, 1, 1});
}

TEST_CASE("delta coefficients come from the bi-colored graph multiplicity") {
  for (int g = 1; g <= 3; ++g) {
    for (const twist::ZeroProfile& z : {twist::ZeroProfile{1, 1}, twist::ZeroProfile{2, 0, 1}}) {
      int seen = 0;
      AlphaOptions opts;
      opts.observer = [&](const IncrementRecord& r) {
        ++seen;
        const auto members = markings_of(r.bubble);
        CHECK(std::find(members.begin(), members.end(), r.marking) != members.end());
        const auto t = twist::rt_bubble_graph(g, r.before, members);
        CHECK(twist::validate_twist(t, r.before).ok());
        CHECK(twist::multiplicity(t) == r.coefficient);
        int expect = 1;
        for (int i : members) expect += r.before[i - 1];
        CHECK(r.coefficient == expect);
      };
      alpha_rt(g, z, opts);
      CHECK(seen > 0);
    }
  }
}

TEST_CASE("max_class_degree truncation does not change the top coefficients") {
  const twist::ZeroProfile z{1, 2, 2};
  const auto full = alpha_rt(2, z);
  AlphaOptions opts;
  opts.max_class_degree = 2;
  const auto cut = alpha_rt(2, z, opts);
  for (int k = 3; k <= 5; ++k) CHECK(cut.coefficient(k) == full.coefficient(k));
}

TEST_CASE("a_symbolic examples") {
  CHECK(a_symbolic(1, 1, 0) == 1);
  for (int g = 1; g <= 3; ++g) {
    for (int z = 1; z <= 3; ++z) CHECK(a_symbolic(g, z, 0) == 1);
  }
  CHECK(a_symbolic(2, 1, 1) == 4);
  CHECK(a_symbolic(2, 0, 1) == 6);
  CHECK(a_symbolic(3, 0, 2) == 28);
  CHECK(a_symbolic(3, 1, 2) == 12);
  CHECK(a_symbolic(2, 1, 1, {2, 2, 1}) == 4);
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(alpha_rt(1, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_rt(0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_rt(2, {1, 1}, {{1}, {}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_rt(2, {1, 1}, {{1, 3}, {}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(RTClass::one(1, 2) + RTClass::one(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(integrate_to_point(mul_psi(RTClass::one(1, 1), Site::at_marking(1))),
                  std::logic_error);
}
