#pragma once

#include <cstdint>

namespace lsr {

// Every kernel has a serial reference path and an OpenMP path; both
// produce identical results because work is split into fixed blocks and
// reduced in block order.
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);
int max_threads();

template <class F>
void for_each_index(std::int64_t n, Exec exec, F&& f) {
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) f(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) f(i);
}

}  // namespace lsr
