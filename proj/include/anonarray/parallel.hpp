//
// Copyright 2026 The anonarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ANONARRAY_PARALLEL_HPP_
#define ANONARRAY_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace anonarray {

// Thread budget for the column-set scans. threads == 0 means one worker per
// hardware thread. Results never depend on this value: workers write into
// per-index slots and every reduction runs in index order afterwards.
struct Execution {
  unsigned threads = 1;

  unsigned resolved() const {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

// Runs fn(i) for i in [0, count). The first exception thrown by any worker is
// rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, const Execution& exec, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(exec.resolved(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace anonarray

#endif  // ANONARRAY_PARALLEL_HPP_
