#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ilab {

/// Thread configuration for the counting kernels. Results never depend on it:
/// work is split into fixed chunks and reduced in chunk order.
struct Parallelism {
  unsigned threads = 1;

  static Parallelism hardware() {
    return Parallelism{std::max(1u, std::thread::hardware_concurrency())};
  }
};

/// Runs body(chunk_index, begin, end) for `chunks` equal slices of [0, n).
/// Slices are handed to workers round-robin; the caller reduces per-chunk results in index order.
template <typename Body>
void parallel_chunks(std::size_t n, std::size_t chunks, Parallelism par, Body&& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(n, 1)));
  auto slice = [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    body(c, begin, end);
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, par.threads), chunks));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) slice(c);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) slice(c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ilab
