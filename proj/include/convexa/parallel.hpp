#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace convexa {

// Worker count: CONVEXA_THREADS when set to a positive integer, else the hardware count.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("CONVEXA_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return std::min(n, hw);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

// Calls fn(i) for i in [0, n). Each index runs exactly once; the first exception is
// rethrown after all workers stop.
template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
  const size_t workers = std::min(n, static_cast<size_t>(worker_count()));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace convexa
