#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace saddleflow::detail {

/// Calls fn(i) for i in [0, count) on a few worker threads and returns the results in
/// index order. fn must not touch shared mutable state. Exceptions are rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(count);
  if (count == 0) return out;
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  const std::size_t chunk = (count + workers - 1) / workers;

  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t end = std::min(count, begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&out, &fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
    }));
  }
  for (auto& job : jobs) job.get();
  return out;
}

}  // namespace saddleflow::detail
