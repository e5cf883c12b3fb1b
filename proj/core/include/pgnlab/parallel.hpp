// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pgnlab {

// Worker count: PGNLAB_THREADS if set (>0), else hardware concurrency.
unsigned thread_budget();

// Split [0, n) into ordered chunks and run `body(lo, hi)` on each, possibly
// concurrently.  Results come back in chunk order, so merges done by walking
// the returned vector are deterministic no matter how many threads ran.
template <class R>
std::vector<R> parallel_map_chunks(std::size_t n, const std::function<R(std::size_t, std::size_t)>& body);

// Non-template driver used by the instantiations below.
void run_chunked(std::size_t n, std::size_t chunks, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

template <class R>
std::vector<R> parallel_map_chunks(std::size_t n, const std::function<R(std::size_t, std::size_t)>& body) {
  std::size_t chunks = thread_budget();
  if (chunks > n) chunks = n ? n : 1;
  std::vector<R> out(chunks);
  run_chunked(n, chunks, [&](std::size_t idx, std::size_t lo, std::size_t hi) { out[idx] = body(lo, hi); });
  return out;
}

}  // namespace pgnlab
