#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace beable {

/// Samples per chunk. Fixed so chunk boundaries never depend on the worker count.
inline constexpr std::uint64_t kChunkSize = 8192;

/**
 * Splits [0, total) into fixed-size chunks, evaluates `body(begin, end)` for
 * each chunk on up to `workers` threads, and folds the per-chunk results in
 * chunk order with `combine`. The result is identical for every worker count.
 */
template <class Result, class Body, class Combine>
Result reduce_chunks(std::uint64_t total, unsigned workers, Body body, Combine combine) {
  const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Result> partial(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t end = std::min(total, begin + kChunkSize);
    partial[c] = body(begin, end);
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
          try {
            run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  Result out{};
  for (const auto& r : partial) out = combine(out, r);
  return out;
}

}  // namespace beable
