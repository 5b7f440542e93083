#include "lsr/parallel.hpp"

#include <atomic>

#include <omp.h>

namespace lsr {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec e) { g_exec.store(e); }
int max_threads() { return omp_get_max_threads(); }

}  // namespace lsr
