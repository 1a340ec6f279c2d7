#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace mfsp::detail {

// Splits [lo, hi] into contiguous chunks, one per hardware thread, and
// returns fn(chunk_lo, chunk_hi) for each chunk in ascending order.
template <class Result, class Fn>
std::vector<Result> map_chunks(std::uint64_t lo, std::uint64_t hi, std::uint64_t min_chunk, Fn fn) {
  std::vector<Result> results;
  if (lo > hi) return results;
  const std::uint64_t span = hi - lo + 1;
  std::uint64_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::max<std::uint64_t>(1, std::min(workers, span / std::max<std::uint64_t>(min_chunk, 1)));
  if (workers == 1) {
    results.push_back(fn(lo, hi));
    return results;
  }
  results.resize(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::uint64_t step = span / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t a = lo + w * step;
    const std::uint64_t b = w + 1 == workers ? hi : a + step - 1;
    threads.emplace_back([&, w, a, b] {
      try {
        results[w] = fn(a, b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace mfsp::detail
