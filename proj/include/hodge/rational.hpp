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

#ifndef HODGE_RATIONAL_HPP
#define HODGE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hodge {

/// Exact arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// "p/q" rendering; integers print without the denominator.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);
Rational pow2(unsigned e);

}  // namespace hodge

#endif  // HODGE_RATIONAL_HPP
