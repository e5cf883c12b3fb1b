// SPDX-License-Identifier: MIT
#include "pgnlab/parallel.hpp"

#include <cstdlib>
#include <thread>

namespace pgnlab {

unsigned thread_budget() {
  if (const char* env = std::getenv("PGNLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return unsigned(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

void run_chunked(std::size_t n, std::size_t chunks, const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (chunks == 0) chunks = 1;
  std::size_t base = n / chunks, rem = n % chunks;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(chunks);
  pool.reserve(chunks);
  std::size_t lo = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t hi = lo + base + (c < rem ? 1 : 0);
    auto guarded = [&body, &errors, c, lo, hi] {
      try {
        body(c, lo, hi);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    };
    if (chunks == 1) {
      guarded();
    } else {
      pool.emplace_back(guarded);
    }
    lo = hi;
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);  // earliest chunk wins, deterministically
}

}  // namespace pgnlab
