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

#ifndef HODGE_TOOLS_PARALLEL_HPP
#define HODGE_TOOLS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hodge::cli {

inline unsigned default_jobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Applies `f` to every input on up to `jobs` threads. Results keep the input
// order; the first exception (by input index) is rethrown after all workers
// finish.
template <class In, class F>
auto parallel_map(const std::vector<In>& inputs, unsigned jobs, F f)
    -> std::vector<decltype(f(inputs.front()))> {
  using Out = decltype(f(inputs.front()));
  std::vector<Out> out(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) {
      try {
        out[i] = f(inputs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(inputs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace hodge::cli

#endif  // HODGE_TOOLS_PARALLEL_HPP
