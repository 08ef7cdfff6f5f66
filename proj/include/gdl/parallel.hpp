#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gdl {

/// Worker count handed down from the CLI. Reductions never depend on it: work
/// items write into their own slot and callers reduce the slots in index order.
struct ExecContext {
  int threads = 1;

  /// Reads GDL_THREADS, falling back to 1.
  static ExecContext from_env() {
    ExecContext ctx;
    if (const char* v = std::getenv("GDL_THREADS")) {
      ctx.threads = std::max(1, std::atoi(v));
    }
    return ctx;
  }
};

/// Evaluates fn(i) for i in [0, n) and returns the results in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(const ExecContext& ctx, std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  const int workers = static_cast<int>(std::min<std::size_t>(std::max(1, ctx.threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace gdl
