#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace phononet {

// Every sweep in the library evaluates independent points and writes each
// result to its own slot, so serial and parallel runs are bit-identical.
// The serial path is the reference implementation used by the tests.
enum class Execution { serial, parallel };

void set_num_threads(int n);
int max_threads();

template <class F>
void for_each_index(std::size_t n, Execution exec, F&& body) {
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // rethrow the failure of the lowest index, as the serial loop would
  std::exception_ptr failure;
  std::size_t failed_at = n;
  std::mutex failure_mutex;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (static_cast<std::size_t>(i) < failed_at) {
        failed_at = static_cast<std::size_t>(i);
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace phononet
