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

#ifndef HODGE_RT_HPP
#define HODGE_RT_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/rational.hpp"
#include "hodge/twist.hpp"

namespace hodge::rt {

/// Set of markings, bit i - 1 for marking i.
using Mask = std::uint32_t;

inline constexpr int kMaxMarkings = 31;

Mask mask_of(const std::vector<int>& markings);
std::vector<int> markings_of(Mask m);

// A decorated rational-tails stratum on M_{g,n}.
//
// The tree is a laminar family of marking sets of size >= 2; each set is a
// genus-0 bubble carrying those markings, hung below the smallest set that
// contains it (or below the genus-g root). Decorations are psi exponents at
// markings and at both half-edges of every bubble edge, plus kappa monomials
// per vertex. Vertex 0 is the root, vertex j + 1 is bubbles[j].
struct BasisTerm {
  std::vector<Mask> bubbles;                   // strictly increasing
  std::vector<std::uint8_t> psi;               // marking i at index i - 1
  std::vector<std::uint8_t> psi_up;            // parent-side half-edge of bubbles[j]
  std::vector<std::uint8_t> psi_down;          // bubble-side half-edge of bubbles[j]
  std::vector<std::vector<std::uint8_t>> kappa;  // per vertex, sorted indices m >= 1

  int degree() const;
  auto operator<=>(const BasisTerm&) const = default;
};

// A psi site: a marking, or one side of the edge attaching a bubble.
struct Site {
  enum class Kind { marking, node_up, node_down };
  Kind kind = Kind::marking;
  int marking = 0;  // for Kind::marking
  Mask bubble = 0;  // for node sites

  static Site at_marking(int i) { return {Kind::marking, i, 0}; }
  static Site up(Mask b) { return {Kind::node_up, 0, b}; }
  static Site down(Mask b) { return {Kind::node_down, 0, b}; }
};

// Exact Q-linear combination of BasisTerms on M^rt_{g,n}. No tautological
// relations are imposed, so two classes compare equal only formally; numbers
// obtained after pushing forward to a point of M_{g,1} are what is meaningful.
class RTClass {
 public:
  RTClass(int genus, int markings);

  static RTClass one(int genus, int markings);
  static RTClass zero(int genus, int markings) { return RTClass(genus, markings); }

  int genus() const { return genus_; }
  int markings() const { return markings_; }
  const std::map<BasisTerm, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * term, dropping the entry if it cancels.
  void add(const BasisTerm& term, const Rational& c);

  /// The coefficient of the fundamental class (empty tree, no decorations).
  Rational constant() const;
  /// True when every term is a multiple of the fundamental class.
  bool is_scalar() const;
  /// Set of degrees occurring in the class.
  std::vector<int> degrees() const;
  /// Drops all terms of degree > max_degree.
  RTClass truncated(int max_degree) const;

  BasisTerm trivial_term() const;

  RTClass& operator+=(const RTClass& other);
  RTClass& operator-=(const RTClass& other);
  RTClass& operator*=(const Rational& c);
  friend RTClass operator+(RTClass a, const RTClass& b) { return a += b; }
  friend RTClass operator-(RTClass a, const RTClass& b) { return a -= b; }
  friend RTClass operator*(RTClass a, const Rational& c) { return a *= c; }
  friend RTClass operator*(const Rational& c, RTClass a) { return a *= c; }
  friend bool operator==(const RTClass&, const RTClass&) = default;

 private:
  void check_compatible(const RTClass& other) const;

  int genus_;
  int markings_;
  std::map<BasisTerm, Rational> terms_;
};

/// psi at `site` times C. Throws std::invalid_argument when the site is
/// missing from some term.
RTClass mul_psi(const RTClass& c, const Site& site);

/// delta_{0,I} times C: new compatible sets are inserted, a set already
/// present contributes -psi_h - psi_h', crossing sets kill the term.
/// Throws std::invalid_argument when |I| < 2 or I is not a set of markings.
RTClass mul_delta(const RTClass& c, Mask bubble);

/// Pushforward along the map forgetting marking n.
RTClass forget_last(const RTClass& c);

/// Polynomial in xi with RTClass coefficients.
class XiPoly {
 public:
  XiPoly(int genus, int markings) : genus_(genus), markings_(markings) {}
  static XiPoly one(int genus, int markings);

  int genus() const { return genus_; }
  int markings() const { return markings_; }
  const std::map<int, RTClass>& coefficients() const { return coeffs_; }

  /// Coefficient of xi^k (zero class when absent).
  RTClass coefficient(int k) const;
  void set_coefficient(int k, RTClass c);
  int xi_degree() const;

  XiPoly& operator+=(const XiPoly& other);
  XiPoly& operator-=(const XiPoly& other);
  friend bool operator==(const XiPoly&, const XiPoly&) = default;

  XiPoly times_xi() const;

 private:
  int genus_;
  int markings_;
  std::map<int, RTClass> coeffs_;
};

XiPoly mul_psi(const XiPoly& p, const Site& site);
XiPoly mul_delta(const XiPoly& p, Mask bubble);
XiPoly forget_last(const XiPoly& p);
XiPoly scale(const XiPoly& p, const Rational& c);

/// Deterministic text, e.g. "xi^2 + 3*xi*psi_1 + 2*psi_1^2".
std::string render(const RTClass& c);
std::string render(const XiPoly& p);

/// Record of one delta coefficient used by alpha_rt.
struct IncrementRecord {
  twist::ZeroProfile before;  // profile the bi-colored graph is compatible with
  int marking = 0;            // entry being incremented
  Mask bubble = 0;            // markings on the level -1 vertex
  std::int64_t coefficient = 0;
};

struct AlphaOptions {
  /// Markings in the order they are incremented, starting from the zero
  /// profile. Empty: repeatedly strip the first positive entry, so the first
  /// positive entry of Z is incremented last.
  std::vector<int> increment_order;
  /// Drop classes above this degree while recursing (they cannot feed back
  /// into lower degrees).
  std::optional<int> max_class_degree;
  std::function<void(const IncrementRecord&)> observer;
};

/// The default increment order for Z.
std::vector<int> default_increment_order(const twist::ZeroProfile& zeros);

/// Rational-tails restriction of the stratum class alpha(g, Z). Throws
/// std::invalid_argument on negative entries, g < 1, or a bad order.
XiPoly alpha_rt(int g, const twist::ZeroProfile& zeros, const AlphaOptions& options = {});

/// Pushes forward all markings but the first and returns the coefficient of
/// the fundamental class of M_{g,1}. Throws std::logic_error when the
/// pushforward is not a multiple of the fundamental class.
Rational integrate_to_point(const RTClass& c);

/// Top xi coefficient of (1/n!) pi_{n*} alpha(g, (z, 2, ..., 2)).
Rational a_symbolic(int g, int z, int n,
                    const std::vector<int>& increment_order = {});

}  // namespace hodge::rt

#endif  // HODGE_RT_HPP
