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

#include "hodge/coeff.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

namespace hodge::coeff {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::base: return "base";
    case Provenance::identity2: return "identity2";
    case Provenance::identity3: return "identity3";
    case Provenance::identity4: return "identity4";
  }
  return "?";
}

Provenance parse_provenance(const std::string& s) {
  for (Provenance p : {Provenance::base, Provenance::identity2, Provenance::identity3,
                       Provenance::identity4}) {
    if (s == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown provenance '" + s + "'");
}

UnreachableCell::UnreachableCell(int g, int z, int n)
    : std::domain_error("unreachable cell a(" + std::to_string(g) + "," + std::to_string(z) +
                        "," + std::to_string(n) + "): not determined by the identities"),
      cell{g, z, n} {}

std::optional<Entry> CoeffTable::find(const Cell& cell) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(cell);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CoeffTable::store(const Cell& cell, Entry entry) {
  std::unique_lock lock(mutex_);
  entries_.insert_or_assign(cell, std::move(entry));
}

std::map<Cell, Entry> CoeffTable::snapshot() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::size_t CoeffTable::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void CoeffTable::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
  persisted_.clear();
  loaded_ = 0;
  computed_ = 0;
  hits_ = 0;
}

namespace {

std::string line_of(const Cell& c, const Entry& e) {
  const auto& [g, z, n] = c;
  return std::to_string(g) + "," + std::to_string(z) + "," + std::to_string(n) + "," +
         hodge::to_string(e.value) + "," + to_string(e.provenance) + "\n";
}

}  // namespace

void CoeffTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  std::map<Cell, Entry> read;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    try {
      if (fields.size() != 5) throw std::invalid_argument("expected 5 fields");
      const Cell cell{std::stoi(fields[0]), std::stoi(fields[1]), std::stoi(fields[2])};
      read.insert_or_assign(cell, Entry{parse_rational(fields[3]), parse_provenance(fields[4])});
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::unique_lock lock(mutex_);
  for (const auto& [cell, entry] : read) entries_.insert_or_assign(cell, entry);
  persisted_ = std::move(read);
  loaded_ = persisted_.size();
}

void CoeffTable::append_new(const std::filesystem::path& path) const {
  std::string fresh;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [cell, entry] : entries_) {
      if (!persisted_.count(cell)) fresh += line_of(cell, entry);
    }
  }
  if (fresh.empty()) return;
  std::string existing;
  if (std::ifstream in(path); in) {
    std::stringstream ss;
    ss << in.rdbuf();
    existing = ss.str();
    if (!existing.empty() && existing.back() != '\n') existing += '\n';
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache " + tmp.string());
    out << existing << fresh;
    if (!out.flush()) throw std::runtime_error("cannot write cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string CoeffTable::serialize() const {
  std::shared_lock lock(mutex_);
  std::string out;
  for (const auto& [cell, entry] : entries_) out += line_of(cell, entry);
  return out;
}

CoeffStats CoeffTable::stats() const {
  std::shared_lock lock(mutex_);
  return {loaded_, computed_.load(), hits_.load()};
}

bool reachable(int g, int z, int n) {
  if (g < 1 || z < 0 || n < 0) return false;
  return n == 0 || (n <= g - 1 && z >= g - 1 - n);
}

Rational a_rec(CoeffTable& table, int g, int z, int n) {
  if (g < 1 || z < 0 || n < 0) {
    throw std::invalid_argument("a_rec: need g >= 1, z >= 0, n >= 0");
  }
  if (!reachable(g, z, n)) throw UnreachableCell(g, z, n);
  const Cell cell{g, z, n};
  if (auto hit = table.find(cell)) {
    table.note_hit();
    return hit->value;
  }

  Entry e;
  if (n == 0) {
    e = {Rational(1), Provenance::base};
  } else if (z == 0 && n == g - 1) {
    e = {odd_spin_count(g), Provenance::identity3};
  } else if (z == g - 1 - n) {
    // 1 <= n <= g - 2 here, so both cells on the right are on the genus g - 1
    // diagonal or its neighbour and stay reachable.
    e = {a_rec(table, g - 1, g - 2 - n, n) + 4 * a_rec(table, g - 1, g - 1 - n, n - 1),
         Provenance::identity4};
  } else {
    e = {a_rec(table, g, z - 1, n) - 2 * a_rec(table, g, z + 1, n - 1), Provenance::identity2};
  }
  table.note_computed();
  Rational v = e.value;
  table.store(cell, std::move(e));
  return v;
}

CoeffTable& global_table() {
  static CoeffTable table;
  return table;
}

Rational a_rec(int g, int z, int n) { return a_rec(global_table(), g, z, n); }

namespace {

void check_range(int g, int n, const char* what) {
  if (g < 1 || n < 0 || n > g - 1) {
    throw std::invalid_argument(std::string(what) + ": need 0 <= n <= g - 1, got g=" +
                                std::to_string(g) + " n=" + std::to_string(n));
  }
}

}  // namespace

Rational w_seq(int g, int n) {
  check_range(g, n, "w_seq");
  // Row h holds w_{h,0..h-1}; the two ends of every row are fixed by the
  // base values, the inside by the recursion.
  std::vector<Rational> row{Rational(1)};
  for (int h = 2; h <= g; ++h) {
    std::vector<Rational> next(h);
    next[0] = 1;
    next[h - 1] = odd_spin_count(h);
    for (int k = 1; k <= h - 2; ++k) next[k] = row[k] + 4 * row[k - 1];
    row = std::move(next);
  }
  return row[n];
}

Rational u_seq(int g, int n) {
  check_range(g, n, "u_seq");
  Rational u = 1;
  for (int k = 1; k <= n; ++k) u = w_seq(g, k) - 2 * u;
  return u;
}

Rational u_closed_form(int g, int n) {
  check_range(g, n, "u_closed_form");
  Rational sum = 0, sign = 1;
  for (int i = 0; i <= n; ++i) {
    sum += sign * w_seq(g, n - i);
    sign *= -2;
  }
  return sum;
}

Rational a_g(int g) {
  if (g < 1) throw std::invalid_argument("a_g: need g >= 1");
  return u_seq(g, g - 1);
}

Rational elliptic_count(int z, int z_prime) {
  if (z < 0 || z_prime < 1) throw std::invalid_argument("elliptic_count: need z >= 0, z' >= 1");
  return Rational(z_prime) * z_prime;
}

Rational odd_spin_count(int g) {
  if (g < 1) throw std::invalid_argument("odd_spin_count: need g >= 1");
  return pow2(g - 1) * (pow2(g) - 1);
}

}  // namespace hodge::coeff
