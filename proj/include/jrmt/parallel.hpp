#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "jrmt/randgen.hpp"

namespace jrmt {

/// Worker count: hardware concurrency, capped by JRMT_THREADS when set to a
/// positive integer. Never below 1.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("JRMT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) hw = std::min<long>(hw, cap);
  }
  return hw;
}

/// Runs f(stream, i) for i in [0, trials) with stream = {seed, i}. Results are
/// returned in trial order, so output does not depend on the worker count.
template <class F>
auto parallel_trials(int trials, std::uint64_t seed, F&& f)
    -> std::vector<decltype(f(std::declval<const SeededStream&>(), 0))> {
  using R = decltype(f(std::declval<const SeededStream&>(), 0));
  std::vector<R> out(static_cast<std::size_t>(std::max(trials, 0)));
  if (trials <= 0) return out;
  const int workers = std::min(worker_count(), trials);
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        out[i] = f(SeededStream{seed, static_cast<std::uint64_t>(i)}, i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(trials);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace jrmt
