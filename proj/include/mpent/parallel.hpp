#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mpent {

/// Width from MPENT_THREADS; absent or invalid means serial.
inline int default_width() {
  if (const char* env = std::getenv("MPENT_THREADS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

inline int resolve_width(int requested) { return requested > 0 ? requested : default_width(); }

/// Runs fn(i) for i in [0, count) on up to `width` threads. Callers write
/// results by index, so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(int count, int width, Fn&& fn) {
  width = std::clamp(width, 1, std::max(count, 1));
  if (width == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (int t = 0; t < width; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mpent
