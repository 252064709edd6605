#pragma once

#include <cstddef>

namespace micropolar {

enum class Exec { serial, parallel };

/// Process-wide default used by every kernel that is not given an explicit policy.
Exec default_exec();
void set_default_exec(Exec e);

/// Sets the OpenMP team size; 1 also switches the default policy to serial.
void set_thread_count(int n);
int thread_count();

template <class F>
void for_each_index(std::size_t n, Exec e, F&& f) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (e == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
  }
}

template <class F>
void for_each_index(std::size_t n, F&& f) {
  for_each_index(n, default_exec(), static_cast<F&&>(f));
}

}  // namespace micropolar
