#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gbake {

/// Fixed-size pool running index-parallel loops.
///
/// parallel_for hands out indices dynamically, so callers must write results
/// only to index-owned locations; output is then independent of worker count.
class WorkerPool {
public:
  /// `workers` counts the calling thread; 0 means hardware concurrency.
  explicit WorkerPool(std::size_t workers = 0);
  ~WorkerPool();

  WorkerPool(const WorkerPool &) = delete;
  WorkerPool &operator=(const WorkerPool &) = delete;

  std::size_t size() const { return threads_.size() + 1; }

  /// Runs fn(i) for i in [0, n). Blocks until done; rethrows the first exception.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

private:
  void worker_loop();
  void run_indices();

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;

  const std::function<void(std::size_t)> *job_ = nullptr;
  std::size_t job_size_ = 0;
  std::size_t next_index_ = 0;
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

/// Worker count from an explicit request, falling back to GBAKE_WORKERS and
/// then to hardware concurrency. Always at least 1.
std::size_t resolve_worker_count(std::size_t requested);

} // namespace gbake
