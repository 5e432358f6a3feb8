#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace binnms {

// Number of workers to use for a request of `threads` (0 = hardware).
inline unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls fn(i) for every i in [0, count) on up to `threads` workers. Each
// worker first calls make_state() and passes the result to fn, so workers can
// own scratch buffers. The first exception thrown by any call is rethrown
// after all workers stop.
template <typename MakeState, typename Fn>
void parallel_for_with(std::size_t count, unsigned threads, MakeState make_state, Fn fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    auto state = make_state();
    for (std::size_t i = 0; i < count; ++i) fn(state, i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&] {
    try {
      auto state = make_state();
      for (std::size_t i = next++; i < count && !failed; i = next++) fn(state, i);
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  struct NoState {};
  parallel_for_with(
      count, threads, [] { return NoState{}; },
      [&fn](NoState&, std::size_t i) { fn(i); });
}

}  // namespace binnms
