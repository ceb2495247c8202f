#include "fts/parallel.hpp"

#include <omp.h>

#include <atomic>

namespace fts {

namespace {
std::atomic<int> g_jobs{0};
}

void set_jobs(int jobs) { g_jobs = jobs < 0 ? 0 : jobs; }

int jobs() {
  const int j = g_jobs.load();
  return j > 0 ? j : omp_get_max_threads();
}

}  // namespace fts
