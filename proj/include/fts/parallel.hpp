#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace fts {

/// Worker count used by parallel_for; 0 restores the OpenMP default.
void set_jobs(int jobs);
int jobs();

/// Runs f(i) for i in [0, n) on the worker pool. Each index must write only to
/// its own slot; the first exception thrown by any worker is rethrown here.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  std::exception_ptr error;
  std::mutex error_mutex;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs())
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fts
