// Copyright 2026 The acoroute Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace acoroute {

// Persistent thread pool with a parallel_for over [0, n). Items are claimed
// under the pool mutex: item granularity here is a whole solution
// construction, far above lock cost, and claiming under the lock makes the
// generation hand-off race-free. Scheduling is still nondeterministic;
// callers keep results deterministic by writing to per-item slots and
// reducing on the calling thread afterwards.
class WorkerPool {
 public:
  explicit WorkerPool(int workers) : workers_(workers < 1 ? 1 : workers) {
    threads_.reserve(workers_);
    for (int w = 0; w < workers_; ++w)
      threads_.emplace_back([this, w] { worker_loop(w); });
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::unique_lock<std::mutex> lock(mu_);
      stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& t : threads_) t.join();
  }

  int size() const { return workers_; }

  // fn(item, worker_id); worker_id in [0, size()). Blocks until all items
  // completed; rethrows the first exception any item threw.
  void parallel_for(std::size_t n,
                    const std::function<void(std::size_t, int)>& fn) {
    if (n == 0) return;
    std::unique_lock<std::mutex> lock(mu_);
    fn_ = &fn;
    total_ = n;
    next_ = 0;
    remaining_ = n;
    error_ = nullptr;
    ++generation_;
    cv_start_.notify_all();
    cv_done_.wait(lock, [this] { return remaining_ == 0; });
    fn_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void worker_loop(int worker_id) {
    std::uint64_t seen = 0;
    std::unique_lock<std::mutex> lock(mu_);
    for (;;) {
      cv_start_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      while (generation_ == seen && next_ < total_) {
        std::size_t i = next_++;
        bool skip = error_ != nullptr;  // drain after a failure
        const auto* fn = fn_;
        lock.unlock();
        std::exception_ptr err;
        if (!skip) {
          try {
            (*fn)(i, worker_id);
          } catch (...) {
            err = std::current_exception();
          }
        }
        lock.lock();
        if (err && !error_) error_ = err;
        if (--remaining_ == 0) cv_done_.notify_all();
      }
    }
  }

  int workers_;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(std::size_t, int)>* fn_ = nullptr;
  std::size_t total_ = 0;
  std::size_t next_ = 0;
  std::size_t remaining_ = 0;
  std::uint64_t generation_ = 0;
  std::exception_ptr error_;
  bool stop_ = false;
};

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace acoroute
