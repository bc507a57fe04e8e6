// Copyright 2026 The schwinger-qre Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace schwinger::cli {

/// Runs fn(i) for i in [0, n) on at most `workers` threads and returns the
/// results in index order. The first exception thrown by a task is
/// rethrown after all threads join.
template <class Result>
std::vector<Result> parallel_map(std::size_t n, int workers,
                                 const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto drain = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const auto count = static_cast<std::size_t>(std::max(1, workers));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(count, n); ++w) pool.emplace_back(drain);
    drain();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace schwinger::cli
