#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zs {

// Worker count from ZS_THREADS (default 1).
inline int thread_count() {
  if (const char* s = std::getenv("ZS_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0) return n;
  }
  return 1;
}

// Runs fn(i) for i in [begin, end); the first exception is rethrown after join.
template <class Fn>
void parallel_for(int begin, int end, Fn&& fn) {
  const int workers = std::min(thread_count(), std::max(1, end - begin));
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex lock;
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = begin + w; i < end; i += workers) {
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock g(lock);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace zs
