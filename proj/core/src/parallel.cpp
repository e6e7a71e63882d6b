#include "urllc/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace urllc {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("URLLC_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < hw) hw = cap;
    } catch (...) {
      // ignore malformed values, keep hardware default
    }
  }
  return hw;
}

void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
  if (total == 0) return;
  const std::uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
  const int workers = worker_count();
  if (workers == 1 || n_chunks == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      const std::uint64_t b = c * chunk_size;
      const std::uint64_t e = std::min(total, b + chunk_size);
      fn(c, b, e);
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::uint64_t b = c * chunk_size;
      const std::uint64_t e = std::min(total, b + chunk_size);
      fn(c, b, e);
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, n_chunks));
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace urllc
