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

// Decorated rational-tails strata and the three ring operations on them.
//
// A term is the pushforward of a product of psi and kappa classes from the
// moduli space of a rational-tails tree. Everything is local to a vertex:
// psi and kappa restrict to the vertex factors, a new boundary divisor splits
// one vertex, and forgetting a marking only sees the vertex carrying it.

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <stdexcept>

#include "hodge/rt.hpp"

namespace hodge::rt {
namespace {

std::uint8_t bump(std::uint8_t e) {
  if (e == 255) throw std::overflow_error("psi exponent overflow");
  return static_cast<std::uint8_t>(e + 1);
}

// Vertex of the smallest bubble strictly containing `set` (0 for the root).
// `skip` excludes one bubble index, used when `set` is itself a bubble.
int smallest_superset(const BasisTerm& t, Mask set, int skip = -1) {
  int best = 0;
  int best_size = INT_MAX;
  for (std::size_t j = 0; j < t.bubbles.size(); ++j) {
    if (static_cast<int>(j) == skip) continue;
    const Mask b = t.bubbles[j];
    if ((b & set) == set && b != set && std::popcount(b) < best_size) {
      best = static_cast<int>(j) + 1;
      best_size = std::popcount(b);
    }
  }
  return best;
}

int vertex_of_marking(const BasisTerm& t, int i) {
  const Mask bit = Mask{1} << (i - 1);
  int best = 0;
  int best_size = INT_MAX;
  for (std::size_t j = 0; j < t.bubbles.size(); ++j) {
    if ((t.bubbles[j] & bit) && std::popcount(t.bubbles[j]) < best_size) {
      best = static_cast<int>(j) + 1;
      best_size = std::popcount(t.bubbles[j]);
    }
  }
  return best;
}

int parent_of_bubble(const BasisTerm& t, std::size_t j) {
  return smallest_superset(t, t.bubbles[j], static_cast<int>(j));
}

// Restores the sorted order of bubbles, carrying the parallel arrays along.
void normalize(BasisTerm& t) {
  const std::size_t k = t.bubbles.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return t.bubbles[a] < t.bubbles[b]; });
  if (std::is_sorted(perm.begin(), perm.end())) return;
  BasisTerm s;
  s.psi = std::move(t.psi);
  s.kappa.push_back(std::move(t.kappa[0]));
  for (std::size_t p : perm) {
    s.bubbles.push_back(t.bubbles[p]);
    s.psi_up.push_back(t.psi_up[p]);
    s.psi_down.push_back(t.psi_down[p]);
    s.kappa.push_back(std::move(t.kappa[p + 1]));
  }
  t = std::move(s);
}

void erase_bubble(BasisTerm& t, std::size_t j) {
  t.bubbles.erase(t.bubbles.begin() + static_cast<std::ptrdiff_t>(j));
  t.psi_up.erase(t.psi_up.begin() + static_cast<std::ptrdiff_t>(j));
  t.psi_down.erase(t.psi_down.begin() + static_cast<std::ptrdiff_t>(j));
  t.kappa.erase(t.kappa.begin() + static_cast<std::ptrdiff_t>(j) + 1);
}

std::vector<std::uint8_t> pick(const std::vector<std::uint8_t>& k, unsigned subset, bool in) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (((subset >> i) & 1U) == static_cast<unsigned>(in)) out.push_back(k[i]);
  }
  return out;
}

void check_mask(Mask set, int n) {
  if (std::popcount(set) < 2) throw std::invalid_argument("delta needs a set of at least two markings");
  if (n < 32 && (set >> n) != 0) throw std::invalid_argument("delta set contains an unknown marking");
}

void delta_term(const BasisTerm& t, Mask set, const Rational& c, RTClass& out) {
  for (std::size_t j = 0; j < t.bubbles.size(); ++j) {
    const Mask b = t.bubbles[j];
    if (b == set) {
      // Excess intersection: the normal bundle of the edge is -psi_h - psi_h'.
      BasisTerm up = t, down = t;
      up.psi_up[j] = bump(up.psi_up[j]);
      down.psi_down[j] = bump(down.psi_down[j]);
      out.add(up, -c);
      out.add(down, -c);
      return;
    }
    const Mask meet = b & set;
    if (meet != 0 && meet != b && meet != set) return;
  }

  const int parent = smallest_superset(t, set);
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(t.bubbles.begin(), t.bubbles.end(), set) - t.bubbles.begin());
  BasisTerm base = t;
  base.bubbles.insert(base.bubbles.begin() + static_cast<std::ptrdiff_t>(pos), set);
  base.psi_up.insert(base.psi_up.begin() + static_cast<std::ptrdiff_t>(pos), 0);
  base.psi_down.insert(base.psi_down.begin() + static_cast<std::ptrdiff_t>(pos), 0);
  base.kappa.insert(base.kappa.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                    std::vector<std::uint8_t>{});
  const int parent_new =
      (parent == 0 || static_cast<std::size_t>(parent - 1) < pos) ? parent : parent + 1;
  const int child_new = static_cast<int>(pos) + 1;

  // kappa classes of the split vertex distribute over the two halves.
  const auto& k = t.kappa[parent];
  if (k.size() >= 32) throw std::overflow_error("too many kappa factors");
  for (unsigned s = 0; s < (1U << k.size()); ++s) {
    BasisTerm term = base;
    term.kappa[parent_new] = pick(k, s, false);
    term.kappa[child_new] = pick(k, s, true);
    out.add(term, c);
  }
}

struct VertexStar {
  std::vector<int> markings;  // child markings (1-based)
  std::vector<int> bubbles;   // child bubble indices
  int valence = 0;
};

VertexStar star(const BasisTerm& t, int v, int n) {
  VertexStar s;
  for (int i = 1; i <= n; ++i) {
    if (vertex_of_marking(t, i) == v) s.markings.push_back(i);
  }
  for (std::size_t j = 0; j < t.bubbles.size(); ++j) {
    if (parent_of_bubble(t, j) == v) s.bubbles.push_back(static_cast<int>(j));
  }
  s.valence = static_cast<int>(s.markings.size() + s.bubbles.size()) + (v > 0 ? 1 : 0);
  return s;
}

void strip_last(BasisTerm& t, int n) {
  const Mask keep = (Mask{1} << (n - 1)) - 1;
  t.psi.resize(n - 1);
  for (Mask& b : t.bubbles) b &= keep;
  normalize(t);
}

void forget_term(const BasisTerm& t, const Rational& c, int g, int n, RTClass& out) {
  const int v = vertex_of_marking(t, n);
  const VertexStar s = star(t, v, n);

  if (v > 0 && s.valence == 3) {
    // n sits on a bubble with one other child: the bubble is a section of the
    // forgetful map and gets contracted. Any decoration on M_{0,3} kills it.
    const std::size_t j = static_cast<std::size_t>(v - 1);
    if (t.psi[n - 1] || t.psi_down[j] || !t.kappa[v].empty()) return;
    BasisTerm r = t;
    if (!s.markings.empty() && s.markings.size() == 2) {
      const int x = s.markings[0] == n ? s.markings[1] : s.markings[0];
      if (t.psi[x - 1]) return;
      r.psi[x - 1] = t.psi_up[j];
    } else {
      const int k = s.bubbles.at(0);
      if (t.psi_up[k]) return;
      r.psi_up[k] = t.psi_up[j];
    }
    erase_bubble(r, j);
    strip_last(r, n);
    out.add(r, c);
    return;
  }

  const int b = t.psi[n - 1];
  BasisTerm base = t;
  base.psi[n - 1] = 0;

  if (b == 0) {
    // String equation: lower one psi exponent at a half-edge of v.
    for (int x : s.markings) {
      if (x == n || t.psi[x - 1] == 0) continue;
      BasisTerm r = base;
      --r.psi[x - 1];
      strip_last(r, n);
      out.add(r, c);
    }
    for (int k : s.bubbles) {
      if (t.psi_up[k] == 0) continue;
      BasisTerm r = base;
      --r.psi_up[k];
      strip_last(r, n);
      out.add(r, c);
    }
    if (v > 0 && t.psi_down[v - 1] > 0) {
      BasisTerm r = base;
      --r.psi_down[v - 1];
      strip_last(r, n);
      out.add(r, c);
    }
  }

  // psi_n^b times prod kappa_{m_j} pushes to sum over subsets S of
  // kappa_{b - 1 + sum_S m} times the remaining kappas, with kappa_0 the
  // Euler characteristic 2g(v) - 2 + n(v) of the target vertex.
  const auto& k = t.kappa[v];
  if (k.size() >= 32) throw std::overflow_error("too many kappa factors");
  const int gv = v == 0 ? g : 0;
  const int kappa0 = 2 * gv - 2 + (s.valence - 1);
  for (unsigned sub = 0; sub < (1U << k.size()); ++sub) {
    int e = b;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if ((sub >> i) & 1U) e += k[i];
    }
    if (e < 1) continue;
    BasisTerm r = base;
    r.kappa[v] = pick(k, sub, false);
    Rational coeff = c;
    if (e - 1 >= 1) {
      if (e - 1 > 255) throw std::overflow_error("kappa index overflow");
      auto& kv = r.kappa[v];
      kv.insert(std::upper_bound(kv.begin(), kv.end(), static_cast<std::uint8_t>(e - 1)),
                static_cast<std::uint8_t>(e - 1));
    } else {
      if (kappa0 == 0) continue;
      coeff *= kappa0;
    }
    strip_last(r, n);
    out.add(r, coeff);
  }
}

}  // namespace

Mask mask_of(const std::vector<int>& markings) {
  Mask m = 0;
  for (int i : markings) {
    if (i < 1 || i > kMaxMarkings) throw std::invalid_argument("marking out of range");
    m |= Mask{1} << (i - 1);
  }
  return m;
}

std::vector<int> markings_of(Mask m) {
  std::vector<int> out;
  for (int i = 1; m != 0; ++i, m >>= 1) {
    if (m & 1U) out.push_back(i);
  }
  return out;
}

int BasisTerm::degree() const {
  int d = static_cast<int>(bubbles.size());
  for (auto e : psi) d += e;
  for (auto e : psi_up) d += e;
  for (auto e : psi_down) d += e;
  for (const auto& kv : kappa) {
    for (auto m : kv) d += m;
  }
  return d;
}

RTClass::RTClass(int genus, int markings) : genus_(genus), markings_(markings) {
  if (genus < 0 || markings < 0 || markings > kMaxMarkings) {
    throw std::invalid_argument("RTClass: bad genus or marking count");
  }
}

RTClass RTClass::one(int genus, int markings) {
  RTClass c(genus, markings);
  c.add(c.trivial_term(), 1);
  return c;
}

BasisTerm RTClass::trivial_term() const {
  BasisTerm t;
  t.psi.assign(markings_, 0);
  t.kappa.resize(1);
  return t;
}

void RTClass::add(const BasisTerm& term, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(term, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational RTClass::constant() const {
  auto it = terms_.find(trivial_term());
  return it == terms_.end() ? Rational(0) : it->second;
}

bool RTClass::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == trivial_term());
}

std::vector<int> RTClass::degrees() const {
  std::vector<int> d;
  for (const auto& [t, c] : terms_) d.push_back(t.degree());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

RTClass RTClass::truncated(int max_degree) const {
  RTClass r(genus_, markings_);
  for (const auto& [t, c] : terms_) {
    if (t.degree() <= max_degree) r.terms_.emplace(t, c);
  }
  return r;
}

void RTClass::check_compatible(const RTClass& other) const {
  if (genus_ != other.genus_ || markings_ != other.markings_) {
    throw std::invalid_argument("RTClass: mixing classes on different moduli spaces");
  }
}

RTClass& RTClass::operator+=(const RTClass& other) {
  check_compatible(other);
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

RTClass& RTClass::operator-=(const RTClass& other) {
  check_compatible(other);
  for (const auto& [t, c] : other.terms_) add(t, -c);
  return *this;
}

RTClass& RTClass::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

RTClass mul_psi(const RTClass& c, const Site& site) {
  RTClass out(c.genus(), c.markings());
  for (const auto& [t, coeff] : c.terms()) {
    BasisTerm r = t;
    if (site.kind == Site::Kind::marking) {
      if (site.marking < 1 || site.marking > c.markings()) {
        throw std::invalid_argument("mul_psi: unknown marking " + std::to_string(site.marking));
      }
      r.psi[site.marking - 1] = bump(r.psi[site.marking - 1]);
    } else {
      auto it = std::find(r.bubbles.begin(), r.bubbles.end(), site.bubble);
      if (it == r.bubbles.end()) {
        throw std::invalid_argument("mul_psi: half-edge site on a bubble absent from a term");
      }
      const auto j = static_cast<std::size_t>(it - r.bubbles.begin());
      auto& e = site.kind == Site::Kind::node_up ? r.psi_up[j] : r.psi_down[j];
      e = bump(e);
    }
    out.add(r, coeff);
  }
  return out;
}

RTClass mul_delta(const RTClass& c, Mask bubble) {
  check_mask(bubble, c.markings());
  RTClass out(c.genus(), c.markings());
  for (const auto& [t, coeff] : c.terms()) delta_term(t, bubble, coeff, out);
  return out;
}

RTClass forget_last(const RTClass& c) {
  const int g = c.genus(), n = c.markings();
  if (n == 0) throw std::invalid_argument("forget_last: no marking to forget");
  if (2 * g - 2 + (n - 1) <= 0) {
    throw std::invalid_argument("forget_last: target moduli space is unstable");
  }
  RTClass out(g, n - 1);
  for (const auto& [t, coeff] : c.terms()) forget_term(t, coeff, g, n, out);
  return out;
}

}  // namespace hodge::rt
