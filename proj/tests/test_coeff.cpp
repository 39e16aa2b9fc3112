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

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "doctest.h"
#include "hodge/coeff.hpp"

using namespace hodge;
using namespace hodge::coeff;
namespace fs = std::filesystem;

namespace {

// Scratch directory removed when the test case ends.
struct TempDir {
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("hodge-coeff-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Re-derives a stored value from the entries its provenance points at.
Rational replay(const CoeffTable& t, int g, int z, int n, Provenance p) {
  auto at = [&](int a, int b, int c) {
    const auto e = t.find({a, b, c});
    REQUIRE(e.has_value());
    return e->value;
  };
  switch (p) {
    case Provenance::base: return 1;
    case Provenance::identity2: return at(g, z - 1, n) - 2 * at(g, z + 1, n - 1);
    case Provenance::identity3: return pow2(g - 1) * (pow2(g) - 1);
    case Provenance::identity4: return at(g - 1, g - 2 - n, n) + 4 * at(g - 1, g - 1 - n, n - 1);
  }
  return -1;
}

}  // namespace

TEST_CASE("a_rec examples") {
  CoeffTable t;
  for (int g = 1; g <= 6; ++g) {
    for (int z = 0; z <= 6; ++z) CHECK(a_rec(t, g, z, 0) == 1);
  }
  CHECK(a_rec(t, 3, 0, 2) == 28);
  CHECK(a_rec(t, 2, 0, 1) == 6);
  CHECK(a_rec(t, 2, 2, 0) == 1);
  CHECK(a_rec(t, 2, 1, 1) == 4);
  CHECK(a_rec(t, 2, 1, 1) == a_rec(t, 2, 0, 1) - 2 * a_rec(t, 2, 2, 0));
  CHECK(a_rec(3, 0, 2) == 28);
}

TEST_CASE("provenance labels") {
  CoeffTable t;
  a_rec(t, 2, 1, 1);
  a_rec(t, 3, 1, 1);
  CHECK(t.find({2, 1, 1})->provenance == Provenance::identity2);
  CHECK(t.find({2, 0, 1})->provenance == Provenance::identity3);
  CHECK(t.find({2, 2, 0})->provenance == Provenance::base);
  CHECK(t.find({3, 1, 1})->provenance == Provenance::identity4);
  for (auto p : {Provenance::base, Provenance::identity2, Provenance::identity3, Provenance::identity4}) {
    CHECK(parse_provenance(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_provenance("identity5"), std::invalid_argument);
}

TEST_CASE("every stored value replays from its provenance") {
  CoeffTable t;
  for (int g = 1; g <= 8; ++g) {
    for (int n = 0; n <= g - 1; ++n) {
      for (int z = g - 1 - n; z <= g + 2; ++z) a_rec(t, g, z, n);
    }
  }
  for (const auto& [cell, e] : t.snapshot()) {
    const auto& [g, z, n] = cell;
    CAPTURE(g);
    CAPTURE(z);
    CAPTURE(n);
    CHECK(replay(t, g, z, n, e.provenance) == e.value);
    if (n == 0) CHECK(e.value == 1);
  }
}

TEST_CASE("reachability and errors") {
  CHECK(reachable(3, 0, 0));
  CHECK(reachable(3, 0, 2));
  CHECK(reachable(3, 1, 1));
  CHECK_FALSE(reachable(3, 0, 1));
  CHECK_FALSE(reachable(2, 0, 2));
  CoeffTable t;
  try {
    a_rec(t, 3, 0, 1);
    FAIL("expected UnreachableCell");
  } catch (const UnreachableCell& e) {
    CHECK(e.cell == Cell{3, 0, 1});
    CHECK(std::string(e.what()).find("unreachable cell") != std::string::npos);
  }
  CHECK_THROWS_AS(a_rec(t, 2, 0, 2), UnreachableCell);
  CHECK_THROWS_AS(a_rec(t, 0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(a_rec(t, 1, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(a_rec(t, 1, 0, -1), std::invalid_argument);
}

TEST_CASE("u and w sequences") {
  CHECK(w_seq(2, 1) == 6);
  CHECK(u_seq(2, 1) == 4);
  CHECK(u_seq(2, 1) == w_seq(2, 1) - 2 * u_seq(2, 0));
  for (int g = 1; g <= 12; ++g) {
    CHECK(w_seq(g, 0) == 1);
    CHECK(w_seq(g, g - 1) == pow2(g - 1) * (pow2(g) - 1));
    for (int n = 0; n <= g - 1; ++n) {
      CHECK(u_seq(g, n) == u_closed_form(g, n));
      Rational sum = 0, sign = 1;
      for (int i = 0; i <= n; ++i, sign *= -2) sum += sign * w_seq(g, n - i);
      CHECK(u_seq(g, n) == sum);
      if (g >= 2 && n >= 1 && n <= g - 2) CHECK(w_seq(g, n) == w_seq(g - 1, n) + 4 * w_seq(g - 1, n - 1));
    }
  }
  CHECK_THROWS_AS(w_seq(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(u_seq(3, -1), std::invalid_argument);
}

TEST_CASE("headline constants") {
  CHECK(a_g(1) == 1);
  CHECK(a_g(2) == 4);
  CHECK(a_g(3) == 12);
  CHECK(a_g(10) == 5120);
  for (int g = 2; g <= 12; ++g) {
    CHECK(a_g(g) == pow2(g - 1) * g);
    CHECK(a_g(g) == 2 * a_g(g - 1) + pow2(g - 1));
  }
  CHECK(elliptic_count(0, 1) == 1);
  CHECK(elliptic_count(5, 1) == 1);
  CHECK(elliptic_count(3, 2) == 4);
  CHECK(elliptic_count(0, 3) == 9);
  CHECK(odd_spin_count(1) == 1);
  CHECK(odd_spin_count(2) == 6);
  CHECK(odd_spin_count(3) == 28);
  for (int g = 1; g <= 12; ++g) CHECK(a_rec(g, 0, g - 1) == odd_spin_count(g));
}

TEST_CASE("cache file round trip") {
  TempDir dir;
  const fs::path file = dir.path / "coeff.cache";

  CoeffTable first;
  first.load(file);  // missing file: empty cache
  CHECK(first.size() == 0);
  for (int g = 1; g <= 5; ++g) a_rec(first, g, 1, g - 1);
  CHECK(first.stats().computed == first.size());
  first.append_new(file);
  CHECK(slurp(file) == first.serialize());
  CHECK(slurp(file).rfind("1,1,0,1,base\n", 0) == 0);

  CoeffTable second;
  second.load(file);
  CHECK(second.stats().loaded == first.size());
  for (int g = 1; g <= 5; ++g) CHECK(a_rec(second, g, 1, g - 1) == pow2(g - 1) * g);
  CHECK(second.stats().computed == 0);
  CHECK(second.stats().hits >= 5);
  CHECK(second.snapshot() == first.snapshot());

  // New cells are merged into the existing file.
  a_rec(second, 6, 0, 5);
  second.append_new(file);
  CoeffTable third;
  third.load(file);
  CHECK(third.serialize() == second.serialize());
  for (const auto& entry : fs::directory_iterator(dir.path)) CHECK(entry.path() == file);
}

TEST_CASE("malformed cache lines are rejected with the line number") {
  TempDir dir;
  const fs::path file = dir.path / "bad.cache";
  {
    std::ofstream out(file);
    out << "1,0,0,1,base\n2,0,1,six,identity3\n";
  }
  CoeffTable t;
  try {
    t.load(file);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  {
    std::ofstream out(file);
    out << "1,0,0,1,guess\n";
  }
  CHECK_THROWS_AS(t.load(file), std::runtime_error);
}

TEST_CASE("concurrent readers and writers agree") {
  CoeffTable shared;
  std::vector<std::thread> threads;
  std::vector<Rational> results(8);
  for (int k = 0; k < 8; ++k) {
    threads.emplace_back([&, k] { results[k] = a_rec(shared, 9 + k % 3, 0, 8 + k % 3); });
  }
  for (auto& th : threads) th.join();
  for (int k = 0; k < 8; ++k) CHECK(results[k] == odd_spin_count(9 + k % 3));

  CoeffTable serial;
  for (int g = 9; g <= 11; ++g) a_rec(serial, g, 0, g - 1);
  CHECK(shared.serialize() == serial.serialize());
}

TEST_CASE("clearing and recomputing reproduces the table byte for byte") {
  CoeffTable t;
  for (int g = 1; g <= 7; ++g) a_rec(t, g, 2, g - 1);
  const std::string before = t.serialize();
  t.clear();
  CHECK(t.size() == 0);
  for (int g = 1; g <= 7; ++g) a_rec(t, g, 2, g - 1);
  CHECK(t.serialize() == before);
}
