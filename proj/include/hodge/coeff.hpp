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

#ifndef HODGE_COEFF_HPP
#define HODGE_COEFF_HPP

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hodge/rational.hpp"

namespace hodge::coeff {

// How a cell was obtained. The identities, for a(g, z, n):
//   base       a(g, z, 0) = 1
//   identity2  a(g, z, n) = a(g, z - 1, n) - 2 a(g, z + 1, n - 1)          (z >= 1)
//   identity3  a(g, 0, g - 1) = 2^{g-1} (2^g - 1)
//   identity4  a(g, g-1-n, n) = a(g-1, g-2-n, n) + 4 a(g-1, g-1-n, n-1)    (1 <= n <= g-2)
enum class Provenance { base, identity2, identity3, identity4 };

const char* to_string(Provenance p);
Provenance parse_provenance(const std::string& s);

using Cell = std::tuple<int, int, int>;  // (g, z, n)

struct Entry {
  Rational value;
  Provenance provenance;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Raised for cells the identity system does not determine.
class UnreachableCell : public std::domain_error {
 public:
  UnreachableCell(int g, int z, int n);
  Cell cell;
};

struct CoeffStats {
  std::size_t loaded = 0;    // entries read from a cache file
  std::size_t computed = 0;  // cells evaluated by the recursion
  std::size_t hits = 0;      // lookups answered from the table
};

// Memo of a(g, z, n). Reads are shared, writes exclusive; two threads racing
// on the same cell store the same value, so the lost update is harmless.
class CoeffTable {
 public:
  CoeffTable() = default;
  CoeffTable(const CoeffTable&) = delete;
  CoeffTable& operator=(const CoeffTable&) = delete;

  std::optional<Entry> find(const Cell& cell) const;
  void store(const Cell& cell, Entry entry);
  std::map<Cell, Entry> snapshot() const;
  std::size_t size() const;
  void clear();

  /// Reads `g,z,n,p/q,provenance` lines. A missing file is an empty cache.
  /// Throws std::runtime_error naming the line on malformed input.
  void load(const std::filesystem::path& path);
  /// Writes every entry not present when the file was loaded, sorted by
  /// cell. The whole file is rewritten through a temporary and renamed, so a
  /// reader never sees a partial line.
  void append_new(const std::filesystem::path& path) const;
  /// Every entry in file format, sorted by cell.
  std::string serialize() const;

  CoeffStats stats() const;
  void note_hit() const { ++hits_; }
  void note_computed() const { ++computed_; }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Cell, Entry> entries_;
  std::map<Cell, Entry> persisted_;
  std::size_t loaded_ = 0;
  mutable std::atomic<std::size_t> computed_{0};
  mutable std::atomic<std::size_t> hits_{0};
};

/// True when identities (1)-(4) determine a(g, z, n).
bool reachable(int g, int z, int n);

/// a(g, z, n) through the identities, memoized in `table`. Throws
/// std::invalid_argument on g < 1, z < 0 or n < 0 and UnreachableCell when
/// the identities do not determine the cell.
Rational a_rec(CoeffTable& table, int g, int z, int n);
/// Same, with a process-wide table.
Rational a_rec(int g, int z, int n);
CoeffTable& global_table();

/// w_{g,n} = a(g, g-n-1, n), through w_{g,n} = w_{g-1,n} + 4 w_{g-1,n-1}.
Rational w_seq(int g, int n);
/// u_{g,n} = a(g, g-n, n), through u_{g,n} = w_{g,n} - 2 u_{g,n-1}.
Rational u_seq(int g, int n);
/// sum_{i=0}^{n} (-2)^i w_{g,n-i}.
Rational u_closed_form(int g, int n);
/// a_g = u_{g,g-1}.
Rational a_g(int g);

Rational elliptic_count(int z, int z_prime);
Rational odd_spin_count(int g);

}  // namespace hodge::coeff

#endif  // HODGE_COEFF_HPP
