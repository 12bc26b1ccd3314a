#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace canids {

// Shared worker pool for data parallelism inside batch math. Work is split
// into chunks whose boundaries depend only on the problem size (never on the
// thread count), and chunk outputs are combined by the caller in index order,
// so numeric results are bit-identical for any --jobs setting.
class ThreadPool {
 public:
  static ThreadPool& instance() {
    static ThreadPool pool;
    return pool;
  }

  // Number of threads participating in for_chunks (including the caller).
  unsigned threads() const {
    return static_cast<unsigned>(workers_.size()) + 1;
  }

  // Resize the pool. Only call while no work is in flight (e.g. at startup).
  void set_threads(unsigned n) {
    if (n < 1) n = 1;
    stop_workers();
    start_workers(n - 1);
  }

  // Runs fn(chunk_index) for every index in [0, chunk_count). Blocks until
  // all chunks finished; rethrows the first chunk exception. Re-entrant
  // calls (from inside a chunk) run inline.
  void for_chunks(std::size_t chunk_count,
                  const std::function<void(std::size_t)>& fn) {
    if (chunk_count == 0) return;
    if (in_worker_ || workers_.empty() || chunk_count == 1) {
      for (std::size_t i = 0; i < chunk_count; ++i) fn(i);
      return;
    }
    {
      std::lock_guard<std::mutex> lock(mutex_);
      job_fn_ = &fn;
      job_count_ = chunk_count;
      next_.store(0, std::memory_order_relaxed);
      pending_ = chunk_count;
      first_error_ = nullptr;
      ++generation_;
    }
    cv_.notify_all();
    in_worker_ = true;  // nested calls from our own chunks run inline
    run_chunks(fn);
    in_worker_ = false;
    std::unique_lock<std::mutex> lock(mutex_);
    done_cv_.wait(lock, [&] { return pending_ == 0 && busy_workers_ == 0; });
    job_fn_ = nullptr;
    if (first_error_) std::rethrow_exception(first_error_);
  }

  ~ThreadPool() { stop_workers(); }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

 private:
  ThreadPool() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 1) hw = 1;
    start_workers(hw - 1);
  }

  void start_workers(unsigned count) {
    stopping_ = false;
    for (unsigned i = 0; i < count; ++i) {
      workers_.emplace_back([this] { worker_loop(); });
    }
  }

  void stop_workers() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stopping_ = true;
      ++generation_;
    }
    cv_.notify_all();
    for (auto& t : workers_) t.join();
    workers_.clear();
  }

  void worker_loop() {
    in_worker_ = true;
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(std::size_t)>* fn = nullptr;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
        if (stopping_) return;
        seen = generation_;
        fn = job_fn_;
        if (fn) ++busy_workers_;
      }
      if (!fn) continue;
      run_chunks(*fn);
      {
        std::lock_guard<std::mutex> lock(mutex_);
        --busy_workers_;
        if (pending_ == 0 && busy_workers_ == 0) done_cv_.notify_all();
      }
    }
  }

  void run_chunks(const std::function<void(std::size_t)>& fn) {
    for (;;) {
      const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
      if (i >= job_count_) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!first_error_) first_error_ = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_all();
    }
  }

  static thread_local bool in_worker_;

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* job_fn_ = nullptr;
  std::size_t job_count_ = 0;
  std::atomic<std::size_t> next_{0};
  std::size_t pending_ = 0;
  std::size_t busy_workers_ = 0;
  std::uint64_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr first_error_;
};

inline thread_local bool ThreadPool::in_worker_ = false;

inline void set_worker_threads(unsigned n) {
  ThreadPool::instance().set_threads(n);
}

// Splits [0,count) into fixed-size chunks and runs body(chunk_index, begin,
// end) across the pool. chunk_size is part of the numeric contract of the
// caller: it must not be derived from the thread count.
template <typename Body>
void parallel_chunks(std::size_t count, std::size_t chunk_size,
                     const Body& body) {
  if (count == 0) return;
  if (chunk_size < 1) chunk_size = 1;
  const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
  if (n_chunks == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  const std::function<void(std::size_t)> fn = [&](std::size_t c) {
    const std::size_t begin = c * chunk_size;
    const std::size_t end =
        begin + chunk_size < count ? begin + chunk_size : count;
    body(c, begin, end);
  };
  ThreadPool::instance().for_chunks(n_chunks, fn);
}

}  // namespace canids
