#pragma once

// Ordered fan-out / fan-in over a contiguous index range.
//
// `compute(i)` runs on a pool of worker threads; `consume(i, result)` runs on
// the calling thread in strictly ascending i, whatever order the workers
// finish in. consume returns false to stop early; indices already handed to
// workers are finished but discarded. The first exception thrown by compute
// is rethrown on the calling thread at the point its index would have been
// consumed.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

namespace collatz {

template <class Result, class Compute, class Consume>
void ordered_parallel_for(std::uint64_t first, std::uint64_t last, unsigned workers, Compute&& compute,
                          Consume&& consume) {
  if (first >= last) return;
  if (workers <= 1) {
    for (std::uint64_t i = first; i < last; ++i) {
      if (!consume(i, compute(i))) return;
    }
    return;
  }

  using Slot = std::variant<Result, std::exception_ptr>;
  const std::uint64_t window = 4ULL * workers;

  std::mutex mu;
  std::condition_variable ready;     // a result was published
  std::condition_variable progress;  // the consumer advanced
  std::map<std::uint64_t, Slot> done;
  std::uint64_t next_to_issue = first;
  std::uint64_t next_to_consume = first;
  bool stop = false;

  auto worker = [&] {
    for (;;) {
      std::uint64_t index = 0;
      {
        std::unique_lock lock(mu);
        progress.wait(lock, [&] { return stop || next_to_issue >= last || next_to_issue < next_to_consume + window; });
        if (stop || next_to_issue >= last) return;
        index = next_to_issue++;
      }
      Slot slot;
      try {
        slot.template emplace<0>(compute(index));
      } catch (...) {
        slot.template emplace<1>(std::current_exception());
      }
      {
        std::lock_guard lock(mu);
        done.emplace(index, std::move(slot));
      }
      ready.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);

  auto shutdown = [&] {
    {
      std::lock_guard lock(mu);
      stop = true;
    }
    progress.notify_all();
    pool.clear();
  };

  try {
    while (next_to_consume < last) {
      Slot slot;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return done.contains(next_to_consume); });
        auto node = done.extract(next_to_consume);
        slot = std::move(node.mapped());
      }
      if (auto* error = std::get_if<std::exception_ptr>(&slot)) std::rethrow_exception(*error);
      const std::uint64_t index = next_to_consume;
      const bool keep_going = consume(index, std::move(std::get<Result>(slot)));
      {
        std::lock_guard lock(mu);
        ++next_to_consume;
        if (!keep_going) stop = true;
      }
      progress.notify_all();
      if (!keep_going) break;
    }
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();
}

}  // namespace collatz
