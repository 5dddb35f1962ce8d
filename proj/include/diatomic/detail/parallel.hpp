#pragma once

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

namespace diatomic::report {

template <class F>
auto parallel_map(std::size_t count, F&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::vector<std::future<std::vector<Result>>> chunks;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    chunks.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async, [&fn, begin, end] {
      std::vector<Result> part;
      part.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) part.push_back(fn(i));
      return part;
    }));
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& c : chunks) {
    for (auto& r : c.get()) out.push_back(std::move(r));
  }
  return out;
}

} // namespace diatomic::report
