#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace isog4 {

/// Environment variable consulted when a thread count of 0 (auto) is requested.
inline constexpr const char* kThreadsEnv = "ISOG4_THREADS";

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Accumulates body(i, acc) over i in [first, last), split across threads in
/// interleaved blocks; per-thread accumulators are merged with +=. With exact
/// integer tallies the result does not depend on the thread count.
template <class Acc, class Body>
Acc parallel_accumulate(std::uint64_t first, std::uint64_t last, unsigned threads, Body body) {
  if (last <= first) return Acc{};
  threads = std::max(1u, threads);
  constexpr std::uint64_t kBlock = 64;
  auto worker = [&](unsigned id) {
    Acc acc{};
    for (std::uint64_t start = first + id * kBlock; start < last; start += threads * kBlock) {
      const std::uint64_t stop = std::min(last, start + kBlock);
      for (std::uint64_t i = start; i < stop; ++i) body(i, acc);
    }
    return acc;
  };
  if (threads == 1) return worker(0);
  std::vector<Acc> partial(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] { partial[t] = worker(t); });
  }
  for (auto& th : pool) th.join();
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

template <class Body>
std::uint64_t parallel_sum(std::uint64_t first, std::uint64_t last, unsigned threads, Body body) {
  return parallel_accumulate<std::uint64_t>(first, last, threads,
                                            [&](std::uint64_t i, std::uint64_t& acc) { acc += body(i); });
}

}  // namespace isog4
