// Copyright 2026 The Quotegraph Authors.
//
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

#ifndef QUOTEGRAPH_PARALLEL_HPP_
#define QUOTEGRAPH_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace quotegraph {

// Runs fn(i) for i in [0, n) over `threads` workers using contiguous
// blocks. Callers write results to slot i, so output order never depends
// on scheduling. The first exception thrown by a worker is rethrown.
template <typename Fn>
void ParallelFor(std::size_t n, int threads, Fn &&fn) {
  std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * block;
    std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace quotegraph

#endif  // QUOTEGRAPH_PARALLEL_HPP_
