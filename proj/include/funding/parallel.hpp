#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace funding {

// Runs f(chunk_index, begin, end) over [0, n) in fixed-size chunks and
// returns per-chunk results in chunk order. Chunking depends only on n and
// chunk_size, never on the thread count, so any merge that folds the
// returned vector left-to-right is deterministic under any --threads value.
// The first exception thrown by a chunk is rethrown on the calling thread.
template <class T, class Fn>
std::vector<T> parallel_chunks(size_t n, size_t chunk_size, int threads, Fn f) {
  size_t n_chunks = n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
  std::vector<T> results(n_chunks);
  if (n_chunks == 0) return results;
  auto run = [&](size_t ci) {
    size_t begin = ci * chunk_size;
    size_t end = begin + chunk_size < n ? begin + chunk_size : n;
    results[ci] = f(ci, begin, end);
  };
  if (threads <= 1 || n_chunks == 1) {
    for (size_t ci = 0; ci < n_chunks; ++ci) run(ci);
    return results;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  size_t n_workers = static_cast<size_t>(threads) < n_chunks ? static_cast<size_t>(threads)
                                                             : n_chunks;
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (size_t w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      try {
        for (size_t ci = next.fetch_add(1); ci < n_chunks; ci = next.fetch_add(1)) run(ci);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_chunks);  // stop handing out work
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace funding
