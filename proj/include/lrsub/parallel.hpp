#pragma once

// Deterministic fork-join helper: the index space is split into one
// contiguous range per worker and per-range results are merged in range
// order, so output never depends on the worker count.

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace lrsub {

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// fn(range_index, begin, end) runs on [begin, end); ranges are contiguous
// and ordered, one per worker slot.
template <class Fn>
void parallel_ranges(uint64_t total, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (total == 0) return;
  if (workers > total) workers = static_cast<unsigned>(total);
  if (workers == 1) {
    fn(0u, uint64_t(0), total);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errs(workers);
  uint64_t chunk = total / workers, rem = total % workers;
  uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    uint64_t len = chunk + (w < rem ? 1 : 0);
    uint64_t end = begin + len;
    threads.emplace_back([&, w, begin, end]() {
      try {
        fn(w, begin, end);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace lrsub
