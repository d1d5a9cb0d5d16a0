#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "lpsym/rng.hpp"

namespace lpsym {

/// Row-major matrix of samples with the stream that produced it.
struct SampleBatch {
  std::size_t cols = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  std::size_t rows() const noexcept { return cols == 0 ? 0 : values.size() / cols; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i * cols + j];
    return out;
  }
};

/// Samples are generated in fixed-size chunks; chunk c always draws from
/// base.substream(c), so results do not depend on the thread count.
inline constexpr std::size_t kBatchChunk = 1024;

/// Calls fn(rng, begin, end) for every chunk of [0, n).
template <class Fn>
void for_each_chunk(std::size_t n, const RngStream& base, unsigned threads, Fn&& fn) {
  const std::size_t chunks = (n + kBatchChunk - 1) / kBatchChunk;
  auto run_chunk = [&](std::size_t c) {
    RngStream rng = base.substream(c);
    fn(rng, c * kBatchChunk, std::min(n, (c + 1) * kBatchChunk));
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lpsym
