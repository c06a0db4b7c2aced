#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pqvw {

/// Applies fn to every job on up to `workers` threads and returns the results
/// in job order, so output never depends on the worker count. The first
/// exception thrown by a job is rethrown after all workers stop.
template <class Job, class Fn>
auto parallel_map(const std::vector<Job>& jobs, Fn fn, unsigned workers = 1)
{
  using Result = decltype(fn(jobs.front()));
  std::vector<Result> out(jobs.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      out[i] = fn(jobs[i]);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load())
        return;
      try {
        out[i] = fn(jobs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  return out;
}

} // namespace pqvw
