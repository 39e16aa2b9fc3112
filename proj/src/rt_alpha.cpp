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
#include <bit>
#include <sstream>
#include <stdexcept>

#include "hodge/rt.hpp"

namespace hodge::rt {
namespace {

std::string set_suffix(Mask m) {
  std::string s = "[";
  bool first = true;
  for (int i : markings_of(m)) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "]";
}

void power(std::vector<std::string>& f, const std::string& sym, int e) {
  if (e == 0) return;
  f.push_back(e == 1 ? sym : sym + "^" + std::to_string(e));
}

void kappa_factors(std::vector<std::string>& f, const std::vector<std::uint8_t>& k,
                   const std::string& where) {
  for (std::size_t i = 0; i < k.size();) {
    std::size_t j = i;
    while (j < k.size() && k[j] == k[i]) ++j;
    power(f, "kappa_" + std::to_string(k[i]) + where, static_cast<int>(j - i));
    i = j;
  }
}

std::vector<std::string> factors(const BasisTerm& t) {
  std::vector<std::string> f;
  for (Mask b : t.bubbles) f.push_back("delta" + set_suffix(b));
  for (std::size_t i = 0; i < t.psi.size(); ++i) {
    power(f, "psi_" + std::to_string(i + 1), t.psi[i]);
  }
  for (std::size_t j = 0; j < t.bubbles.size(); ++j) {
    power(f, "psi_h" + set_suffix(t.bubbles[j]), t.psi_up[j]);
    power(f, "psi_h'" + set_suffix(t.bubbles[j]), t.psi_down[j]);
  }
  kappa_factors(f, t.kappa[0], "");
  for (std::size_t j = 0; j < t.bubbles.size(); ++j) {
    kappa_factors(f, t.kappa[j + 1], set_suffix(t.bubbles[j]));
  }
  return f;
}

void append_monomial(std::string& out, const Rational& c, std::vector<std::string> f) {
  const bool negative = c < 0;
  const Rational mag = negative ? Rational(-c) : c;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (f.empty()) {
    out += to_string(mag);
    return;
  }
  if (mag != 1) out += to_string(mag) + "*";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += '*';
    out += f[i];
  }
}

void check_order(const twist::ZeroProfile& zeros, const std::vector<int>& order) {
  const int n = static_cast<int>(zeros.size());
  std::vector<int> count(n, 0);
  for (int i : order) {
    if (i < 1 || i > n) throw std::invalid_argument("increment order names an unknown marking");
    ++count[i - 1];
  }
  for (int i = 0; i < n; ++i) {
    if (count[i] != zeros[i]) {
      throw std::invalid_argument("increment order does not match the zero profile");
    }
  }
}

}  // namespace

XiPoly XiPoly::one(int genus, int markings) {
  XiPoly p(genus, markings);
  p.set_coefficient(0, RTClass::one(genus, markings));
  return p;
}

RTClass XiPoly::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? RTClass(genus_, markings_) : it->second;
}

void XiPoly::set_coefficient(int k, RTClass c) {
  if (k < 0) throw std::invalid_argument("negative xi exponent");
  if (c.genus() != genus_ || c.markings() != markings_) {
    throw std::invalid_argument("XiPoly: coefficient on a different moduli space");
  }
  if (c.is_zero()) {
    coeffs_.erase(k);
  } else {
    coeffs_.insert_or_assign(k, std::move(c));
  }
}

int XiPoly::xi_degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

XiPoly& XiPoly::operator+=(const XiPoly& other) {
  for (const auto& [k, c] : other.coeffs_) set_coefficient(k, coefficient(k) + c);
  return *this;
}

XiPoly& XiPoly::operator-=(const XiPoly& other) {
  for (const auto& [k, c] : other.coeffs_) set_coefficient(k, coefficient(k) - c);
  return *this;
}

XiPoly XiPoly::times_xi() const {
  XiPoly p(genus_, markings_);
  for (const auto& [k, c] : coeffs_) p.coeffs_.emplace(k + 1, c);
  return p;
}

namespace {

template <class F>
XiPoly map_coefficients(const XiPoly& p, int markings, F&& f) {
  XiPoly out(p.genus(), markings);
  for (const auto& [k, c] : p.coefficients()) out.set_coefficient(k, f(c));
  return out;
}

}  // namespace

XiPoly mul_psi(const XiPoly& p, const Site& site) {
  return map_coefficients(p, p.markings(), [&](const RTClass& c) { return mul_psi(c, site); });
}

XiPoly mul_delta(const XiPoly& p, Mask bubble) {
  return map_coefficients(p, p.markings(),
                          [&](const RTClass& c) { return mul_delta(c, bubble); });
}

XiPoly forget_last(const XiPoly& p) {
  if (p.markings() == 0) throw std::invalid_argument("forget_last: no marking to forget");
  return map_coefficients(p, p.markings() - 1,
                          [](const RTClass& c) { return forget_last(c); });
}

XiPoly scale(const XiPoly& p, const Rational& s) {
  return map_coefficients(p, p.markings(), [&](const RTClass& c) { return c * s; });
}

std::string render(const RTClass& c) {
  std::string out;
  for (const auto& [t, coeff] : c.terms()) append_monomial(out, coeff, factors(t));
  return out.empty() ? "0" : out;
}

std::string render(const XiPoly& p) {
  std::string out;
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) {
    const int k = it->first;
    for (const auto& [t, coeff] : it->second.terms()) {
      std::vector<std::string> f;
      power(f, "xi", k);
      for (auto& s : factors(t)) f.push_back(std::move(s));
      append_monomial(out, coeff, std::move(f));
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<int> default_increment_order(const twist::ZeroProfile& zeros) {
  // Strip the first positive entry until nothing is left, then replay the
  // decrements backwards.
  std::vector<int> order;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (int r = 0; r < zeros[i]; ++r) order.push_back(static_cast<int>(i) + 1);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

XiPoly alpha_rt(int g, const twist::ZeroProfile& zeros, const AlphaOptions& options) {
  const int n = static_cast<int>(zeros.size());
  if (g < 1) throw std::invalid_argument("alpha_rt: genus must be at least 1");
  if (n > kMaxMarkings) throw std::invalid_argument("alpha_rt: too many markings");
  if (2 * g - 2 + n <= 0) throw std::invalid_argument("alpha_rt: unstable (g, n)");
  for (int z : zeros) {
    if (z < 0) throw std::invalid_argument("alpha_rt: zero profile has a negative entry");
  }
  std::vector<int> order = options.increment_order;
  if (order.empty()) {
    order = default_increment_order(zeros);
  } else {
    check_order(zeros, order);
  }

  XiPoly alpha = XiPoly::one(g, n);
  twist::ZeroProfile current(n, 0);
  for (int i : order) {
    const Mask bit = Mask{1} << (i - 1);
    const int target = current[i - 1] + 1;

    XiPoly next = alpha.times_xi();
    next += scale(mul_psi(alpha, Site::at_marking(i)), target);

    const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    const Mask others = all & ~bit;
    // Every subset of the other markings, joined with i.
    for (Mask rest = others;; rest = (rest - 1) & others) {
      if (rest != 0) {
        const Mask set = rest | bit;
        const std::vector<int> members = markings_of(set);
        const std::int64_t m = twist::multiplicity(twist::rt_bubble_graph(g, current, members));
        if (options.observer) options.observer({current, i, set, m});
        next -= scale(mul_delta(alpha, set), Rational(static_cast<long>(m)));
      }
      if (rest == 0) break;
    }

    if (options.max_class_degree) {
      XiPoly cut(g, n);
      for (const auto& [k, c] : next.coefficients()) {
        cut.set_coefficient(k, c.truncated(*options.max_class_degree));
      }
      next = std::move(cut);
    }
    alpha = std::move(next);
    current[i - 1] = target;
  }
  return alpha;
}

Rational integrate_to_point(const RTClass& c) {
  RTClass r = c;
  while (r.markings() > 1) r = forget_last(r);
  if (!r.is_scalar()) {
    throw std::logic_error("pushforward to M_{g,1} is not a number: " + render(r));
  }
  return r.constant();
}

Rational a_symbolic(int g, int z, int n, const std::vector<int>& increment_order) {
  if (g < 1 || z < 0 || n < 0) throw std::invalid_argument("a_symbolic: need g >= 1, z >= 0, n >= 0");
  twist::ZeroProfile zeros(1, z);
  zeros.insert(zeros.end(), n, 2);
  AlphaOptions opts;
  opts.increment_order = increment_order;
  opts.max_class_degree = n;  // the xi^{z+n} coefficient has class degree n
  const XiPoly alpha = alpha_rt(g, zeros, opts);
  RTClass c = alpha.coefficient(z + n);
  for (int k = 0; k < n; ++k) c = forget_last(c);
  if (!c.is_scalar()) {
    throw std::logic_error("a_symbolic: pushforward is not a number: " + render(c));
  }
  return c.constant() / factorial(static_cast<unsigned>(n));
}

}  // namespace hodge::rt
