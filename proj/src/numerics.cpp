#include "rfspec/numerics.hpp"

#include <cstdlib>

namespace rfspec::detail {

int worker_count(int count) {
  if (count < 64) return 1;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RFSPEC_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed >= 1) workers = static_cast<int>(parsed);
  }
  if (workers < 1) workers = 1;
  return std::min(workers, count);
}

}  // namespace rfspec::detail
