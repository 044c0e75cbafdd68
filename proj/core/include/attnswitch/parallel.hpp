/*
 * Copyright (c) The attnswitch Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace attnswitch {

inline unsigned resolve_workers(unsigned workers) noexcept {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Applies fn to every item and returns the results in input order,
// whatever the worker count. The first exception thrown by fn is rethrown
// on the calling thread after all workers have joined.
template <typename T, typename Fn>
auto parallel_map(std::span<const T> items, Fn&& fn, unsigned workers = 1)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
  using R = std::invoke_result_t<Fn&, const T&>;
  // std::vector<bool> elements cannot be written from separate threads.
  static_assert(!std::is_same_v<R, bool>);
  std::vector<R> out(items.size());
  const std::size_t n_threads =
      std::min<std::size_t>(resolve_workers(workers), items.size());
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        out[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = items.size();
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace attnswitch
