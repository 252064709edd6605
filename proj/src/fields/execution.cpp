#include "micropolar/execution.hpp"

#include <omp.h>

#include <atomic>

namespace micropolar {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

Exec default_exec() { return g_exec.load(std::memory_order_relaxed); }

void set_default_exec(Exec e) { g_exec.store(e, std::memory_order_relaxed); }

void set_thread_count(int n) {
  if (n < 1) n = 1;
  omp_set_num_threads(n);
  set_default_exec(n == 1 ? Exec::serial : Exec::parallel);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace micropolar
