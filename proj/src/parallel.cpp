#include "fy/parallel.hpp"

#include <cstdlib>

namespace fy {

namespace {

int initial_workers() {
  if (const char* env = std::getenv("FY_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::atomic<int> g_workers{initial_workers()};

}  // namespace

int worker_count() { return g_workers.load(std::memory_order_relaxed); }

void set_worker_count(int n) {
  if (n >= 1) g_workers.store(n, std::memory_order_relaxed);
}

}  // namespace fy
