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

#ifndef HODGE_TOOLS_VERIFY_HPP
#define HODGE_TOOLS_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "hodge/twist.hpp"

namespace hodge::cli {

struct Check {
  Check() = default;
  explicit Check(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::string detail;  // first failing assertion, empty on success
};

struct VerifyBounds {
  int genus_max = -1;  // -1: suite default
  int max_size = 6;    // |Z| bound for the rt suite
  int dim = 3;         // 3g - 3 + n bound for graphs and twists
  unsigned jobs = 1;
};

std::vector<Check> verify_graphs(const VerifyBounds& b);
std::vector<Check> verify_twists(const VerifyBounds& b);
std::vector<Check> verify_rt(const VerifyBounds& b);
std::vector<Check> verify_coeffs(const VerifyBounds& b);

/// All zero profiles with exactly n entries and |Z| <= max_size.
std::vector<twist::ZeroProfile> profiles(int n, int max_size);

}  // namespace hodge::cli

#endif  // HODGE_TOOLS_VERIFY_HPP
