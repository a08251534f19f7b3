#include "fingeo/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace fingeo {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  const unsigned n = g_threads.load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::uint64_t n, const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn,
                     unsigned* chunks_used) {
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), std::max<std::uint64_t>(n, 1)));
  if (chunks_used != nullptr) *chunks_used = workers;
  if (workers <= 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t step = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = std::min(n, w * step);
    const std::uint64_t e = std::min(n, b + step);
    pool.emplace_back([&, w, b, e] {
      try {
        fn(w, b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace fingeo
